#include "strokesyn/service.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <mutex>
#include <unordered_set>

#include <httplib.h>

#include "strokesyn/document.hpp"
#include "strokesyn/error.hpp"
#include "strokesyn/svg.hpp"

namespace strokesyn {

const std::string* HttpRequest::header(const std::string& name) const {
    const auto it = headers.find(name);
    return it == headers.end() ? nullptr : &it->second;
}

struct StudioService::Session {
    std::string id;

    // Inputs; revision bumps on every change.
    mutable std::shared_mutex mutex;
    std::uint64_t revision = 0;
    std::vector<Stroke> strokes;
    AnalysisParams params;

    // Derived results, tagged with the revision they reflect.
    std::mutex cache_mutex;
    std::optional<PatternAnalysis> analysis;
    std::uint64_t analysis_revision = 0;
    std::optional<SynthesizedPattern> pattern;
    std::uint64_t pattern_revision = 0;
};

namespace {

HttpResponse json_response(int status, const Json& body) {
    HttpResponse r;
    r.status = status;
    r.body = body.dump();
    return r;
}

HttpResponse error_response(int status, const std::string& message) {
    return json_response(status, {{"error", message}});
}

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InsufficientElements:
        case ErrorCode::InsufficientPoints:
        case ErrorCode::DegenerateDistribution: return 422;
        default: return 400;
    }
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : path.substr(0, path.find('?'))) {
        if (c == '/') {
            if (!cur.empty()) parts.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) parts.push_back(std::move(cur));
    return parts;
}

// If-Match carries a bare or quoted revision number.
std::optional<std::uint64_t> if_match(const HttpRequest& req) {
    const std::string* v = req.header("if-match");
    if (!v) return std::nullopt;
    std::string s;
    for (char c : *v)
        if (c != '"' && c != ' ' && c != 'W' && c != '/') s.push_back(c);
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw Error(ErrorCode::Parse, "If-Match must carry a revision number");
    return std::stoull(s);
}

HttpResponse with_revision(HttpResponse r, std::uint64_t revision) {
    r.headers["ETag"] = "\"" + std::to_string(revision) + "\"";
    return r;
}

std::vector<Stroke> checked_strokes(const Json& body) {
    const Json& arr = body.is_object() && body.contains("strokes") ? body["strokes"] : body;
    auto strokes = strokes_from_json(arr, "$.strokes");
    std::unordered_set<std::uint64_t> ids;
    for (const auto& s : strokes) {
        validate(s);
        if (!ids.insert(s.draw_index).second)
            throw Error(ErrorCode::Parse, "$.strokes: duplicate stroke id " + std::to_string(s.draw_index));
    }
    return strokes;
}

AnalysisParams checked_params(const Json& body) {
    AnalysisParams p = params_from_json(body, "$");
    AnalysisParams probe = p;
    // An unset 1D axis is fitted to the strokes at analysis time.
    if (probe.frame.kind == FrameKind::OneD && probe.frame.length == 0.0)
        probe.frame = ReferenceFrame::one_d({0.0, 0.0}, {1.0, 0.0}, 1.0);
    validate(probe);
    return p;
}

}  // namespace

StudioService::StudioService() = default;
StudioService::~StudioService() = default;

std::size_t StudioService::session_count() const {
    std::shared_lock lock(mutex_);
    return sessions_.size();
}

std::shared_ptr<StudioService::Session> StudioService::find(const std::string& id) const {
    std::shared_lock lock(mutex_);
    const auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

HttpResponse StudioService::handle(const HttpRequest& request) {
    try {
        const auto parts = split_path(request.path);
        if (parts.empty() || parts[0] != "sessions") return error_response(404, "unknown route");
        if (parts.size() == 1) {
            if (request.method != "POST") return error_response(405, "method not allowed");
            return create_session(request);
        }
        const auto session = find(parts[1]);
        if (!session) return error_response(404, "unknown session " + parts[1]);
        if (parts.size() > 3) return error_response(404, "unknown route");
        return session_route(*session, parts.size() == 3 ? parts[2] : "", request);
    } catch (const Error& e) {
        return error_response(status_for(e.code()), e.what());
    } catch (const std::exception& e) {
        return error_response(500, e.what());
    }
}

HttpResponse StudioService::create_session(const HttpRequest& request) {
    auto s = std::make_shared<Session>();
    if (!request.body.empty()) {
        const PatternDocument doc = load_document(request.body);
        for (const auto& st : doc.strokes) validate(st);
        s->strokes = doc.strokes;
        s->params = doc.params;
    }
    {
        std::unique_lock lock(mutex_);
        s->id = "s" + std::to_string(next_id_++);
        sessions_.emplace(s->id, s);
    }
    return with_revision(json_response(201, {{"id", s->id}, {"revision", s->revision}}), s->revision);
}

HttpResponse StudioService::session_route(Session& s, const std::string& tail, const HttpRequest& req) {
    const std::string& m = req.method;
    const auto expected = if_match(req);
    auto stale = [&](std::uint64_t current) {
        return expected && *expected != current;
    };
    auto conflict = [&](std::uint64_t current) {
        return with_revision(json_response(409, {{"error", "stale revision"}, {"revision", current}}), current);
    };

    if (tail.empty() && m == "GET") {
        std::shared_lock lock(s.mutex);
        return with_revision(json_response(200, {{"id", s.id},
                                                 {"revision", s.revision},
                                                 {"strokes", to_json(s.strokes)},
                                                 {"params", to_json(s.params)}}),
                             s.revision);
    }

    if ((tail == "strokes" || tail == "params") && m == "PUT") {
        const Json body = parse_json(req.body);
        std::vector<Stroke> strokes;
        AnalysisParams params;
        if (tail == "strokes") strokes = checked_strokes(body);
        else params = checked_params(body);
        std::unique_lock lock(s.mutex);
        if (stale(s.revision)) return conflict(s.revision);
        if (tail == "strokes") s.strokes = std::move(strokes);
        else s.params = params;
        ++s.revision;
        return with_revision(json_response(200, {{"revision", s.revision}}), s.revision);
    }

    // Analysis at the current revision, computed on demand. Callers hold
    // a shared lock on s.mutex and the cache lock.
    auto current_analysis = [&]() -> const PatternAnalysis& {
        if (!s.analysis || s.analysis_revision != s.revision) {
            s.analysis = analyze(s.strokes, resolve_frame(s.params, s.strokes));
            s.analysis_revision = s.revision;
        }
        return *s.analysis;
    };

    if (tail == "analysis" && m == "GET") {
        std::shared_lock lock(s.mutex);
        if (stale(s.revision)) return conflict(s.revision);
        std::lock_guard cache(s.cache_mutex);
        const PatternAnalysis& a = current_analysis();
        return with_revision(json_response(200, {{"revision", s.revision}, {"analysis", to_json(a)}}), s.revision);
    }

    if (tail == "synthesize" && m == "POST") {
        const Json body = parse_json(req.body);
        const SynthesisRequest request = request_from_json(body, "$");
        validate(request);
        std::shared_lock lock(s.mutex);
        if (stale(s.revision)) return conflict(s.revision);
        std::lock_guard cache(s.cache_mutex);
        SynthesizedPattern pattern = synthesize(current_analysis(), request);
        const std::string svg = export_svg(pattern);
        Json out = {{"revision", s.revision}, {"pattern", to_json(pattern)}, {"svg", svg}};
        s.pattern = std::move(pattern);
        s.pattern_revision = s.revision;
        return with_revision(json_response(200, out), s.revision);
    }

    if (tail == "modulate" && m == "POST") {
        const Json body = parse_json(req.body);
        if (!body.is_object() || !body.contains("background") || !body["background"].is_string())
            throw Error(ErrorCode::Parse, "$.background: expected a base64 PNG string");
        Raster background = decode_png(base64_decode(body["background"].get<std::string>()));
        if (body.contains("origin")) {
            const auto& o = body["origin"];
            if (!o.is_array() || o.size() != 2 || !o[0].is_number() || !o[1].is_number())
                throw Error(ErrorCode::Parse, "$.origin: expected [x, y]");
            background.origin = {o[0].get<double>(), o[1].get<double>()};
        }
        if (body.contains("pixel_size")) {
            if (!body["pixel_size"].is_number() || !(body["pixel_size"].get<double>() > 0.0))
                throw Error(ErrorCode::Parse, "$.pixel_size: expected a positive number");
            background.pixel_size = body["pixel_size"].get<double>();
        }
        const AttributeMap map =
            body.contains("map") ? attribute_map_from_json(body["map"], "$.map") : AttributeMap{};
        validate(map);
        std::optional<SynthesisRequest> request;
        if (body.contains("request")) {
            request = request_from_json(body["request"], "$.request");
            validate(*request);
        }

        std::shared_lock lock(s.mutex);
        if (stale(s.revision)) return conflict(s.revision);
        std::lock_guard cache(s.cache_mutex);
        if (request) {
            s.pattern = synthesize(current_analysis(), *request);
            s.pattern_revision = s.revision;
        }
        if (!s.pattern || s.pattern_revision != s.revision)
            return error_response(422, "no synthesized pattern at the current revision");
        const SynthesizedPattern modulated = modulate_attributes(*s.pattern, background, map);
        SvgOptions options;
        if (body.value("embed_background", false)) {
            options.background = SvgBackground{encode_png(background), background.origin,
                                               background.width * background.pixel_size,
                                               background.height * background.pixel_size};
        }
        return with_revision(json_response(200, {{"revision", s.revision}, {"svg", export_svg(modulated, options)}}),
                             s.revision);
    }

    if (tail == "document" && m == "GET") {
        std::shared_lock lock(s.mutex);
        std::lock_guard cache(s.cache_mutex);
        PatternDocument doc;
        doc.strokes = s.strokes;
        doc.params = s.params;
        if (s.analysis && s.analysis_revision == s.revision) doc.analysis = s.analysis;
        if (s.pattern && s.pattern_revision == s.revision) doc.patterns.push_back(*s.pattern);
        HttpResponse r;
        r.body = save_document(doc);
        return with_revision(r, s.revision);
    }

    if (tail.empty() || tail == "strokes" || tail == "params" || tail == "analysis" || tail == "synthesize" ||
        tail == "modulate" || tail == "document")
        return error_response(405, "method not allowed");
    return error_response(404, "unknown route");
}

std::pair<std::string, int> parse_bind_address(const char* value) {
    const std::string s = value ? value : "";
    if (s.empty()) return {"127.0.0.1", 8080};
    const auto colon = s.rfind(':');
    if (colon == std::string::npos) throw Error(ErrorCode::Parse, "bind address must be host:port");
    const std::string port = s.substr(colon + 1);
    if (port.empty() || port.size() > 5 ||
        !std::all_of(port.begin(), port.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw Error(ErrorCode::Parse, "bind port must be a number");
    const int p = std::stoi(port);
    if (p > 65535) throw Error(ErrorCode::Parse, "bind port out of range");
    return {s.substr(0, colon), p};
}

struct HttpServer::Impl {
    httplib::Server server;
};

HttpServer::HttpServer(StudioService& service) : impl_(std::make_unique<Impl>()) {
    auto forward = [&service](const httplib::Request& in, httplib::Response& out) {
        HttpRequest req;
        req.method = in.method;
        req.path = in.path;
        req.body = in.body;
        for (const auto& [k, v] : in.headers) {
            std::string key = k;
            std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
            req.headers[key] = v;
        }
        const HttpResponse res = service.handle(req);
        out.status = res.status;
        for (const auto& [k, v] : res.headers) out.set_header(k, v);
        out.set_content(res.body, res.content_type);
    };
    impl_->server.Get(".*", forward);
    impl_->server.Post(".*", forward);
    impl_->server.Put(".*", forward);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace strokesyn
