#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>

namespace strokesyn {

struct HttpRequest {
    std::string method;
    std::string path;
    std::string body;
    std::map<std::string, std::string> headers;  // lower-case names

    const std::string* header(const std::string& name) const;
};

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
    std::map<std::string, std::string> headers;
};

/// In-memory studio sessions behind a JSON API.
///
///   POST /sessions                        create (optional document body)
///   GET  /sessions/{id}                   strokes, params, revision
///   PUT  /sessions/{id}/strokes           replace strokes
///   PUT  /sessions/{id}/params            replace analysis params
///   GET  /sessions/{id}/analysis          analysis at the current revision
///   POST /sessions/{id}/synthesize        pattern + SVG
///   POST /sessions/{id}/modulate          background PNG + attribute map -> SVG
///   GET  /sessions/{id}/document          snapshot as a pattern document
///
/// Requests carrying If-Match with a revision other than the current one
/// get 409. Each session serializes its writers; readers run concurrently.
class StudioService {
public:
    StudioService();
    ~StudioService();
    StudioService(const StudioService&) = delete;
    StudioService& operator=(const StudioService&) = delete;

    HttpResponse handle(const HttpRequest& request);
    std::size_t session_count() const;

private:
    struct Session;
    std::shared_ptr<Session> find(const std::string& id) const;

    HttpResponse create_session(const HttpRequest& request);
    HttpResponse session_route(Session& s, const std::string& tail, const HttpRequest& request);

    mutable std::shared_mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t next_id_ = 1;
};

/// Parse "host:port"; unset or empty input gives 127.0.0.1:8080.
std::pair<std::string, int> parse_bind_address(const char* value);

/// Environment variable holding the bind address.
inline constexpr const char* kBindEnv = "STROKESYN_BIND";

/// HTTP binding of a StudioService.
class HttpServer {
public:
    explicit HttpServer(StudioService& service);
    ~HttpServer();

    /// Bind and return the port (an ephemeral one when `port` is 0), or -1.
    int bind(const std::string& host, int port);
    /// Serve until stop(); returns false if the listener failed.
    bool run();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace strokesyn
