#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "strokesyn/pattern_synthesis.hpp"
#include "strokesyn/raster.hpp"

namespace strokesyn {

constexpr int kDocumentVersion = 1;

/// Everything a session or CLI run persists: the reference strokes, the
/// analysis parameters, and optionally the analysis and synthesized patterns.
/// Analysis elements refer to document strokes by draw index; synthesized
/// elements carry their own transformed strokes.
struct PatternDocument {
    int version = kDocumentVersion;
    std::vector<Stroke> strokes;
    AnalysisParams params;
    std::optional<PatternAnalysis> analysis;
    std::vector<SynthesizedPattern> patterns;

    bool operator==(const PatternDocument&) const = default;
};

/// Throws Error(Parse) with a byte offset or field path, or
/// Error(UnsupportedVersion).
PatternDocument load_document(std::string_view text);
std::string save_document(const PatternDocument& doc);

// Fragment codecs shared with the HTTP layer. Decoders take the field path
// used in error messages.
using Json = nlohmann::json;

Json to_json(const Stroke& s);
Json to_json(std::span<const Stroke> strokes);
Json to_json(const AnalysisParams& p);
Json to_json(const TargetRegion& r);
Json to_json(const SynthesisRequest& r);
Json to_json(const SynthesizedPattern& p);
/// Elements refer to `strokes` by draw index.
Json to_json(const PatternAnalysis& a);

std::vector<Stroke> strokes_from_json(const Json& j, const std::string& path);
AnalysisParams params_from_json(const Json& j, const std::string& path);
TargetRegion region_from_json(const Json& j, const std::string& path);
SynthesisRequest request_from_json(const Json& j, const std::string& path);
SynthesizedPattern pattern_from_json(const Json& j, const std::string& path);
PatternAnalysis analysis_from_json(const Json& j, std::span<const Stroke> strokes, const std::string& path);

Json to_json(const AttributeMap& m);
AttributeMap attribute_map_from_json(const Json& j, const std::string& path);

/// Parse JSON text, reporting syntax errors with their byte offset.
Json parse_json(std::string_view text);

}  // namespace strokesyn
