#include "strokesyn/document.hpp"

#include <algorithm>
#include <unordered_map>

#include "strokesyn/error.hpp"

namespace strokesyn {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::Parse, path + ": " + what);
}

std::string at(const std::string& path, const char* key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& object(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    return j;
}

const Json& array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

const Json& field(const Json& j, const char* key, const std::string& path) {
    object(j, path);
    const auto it = j.find(key);
    if (it == j.end()) fail(at(path, key), "missing field");
    return *it;
}

const Json* optional_field(const Json& j, const char* key) {
    const auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

double number(const Json& j, const char* key, const std::string& path) {
    return number(field(j, key, path), at(path, key));
}

std::uint64_t unsigned_int(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

std::uint64_t unsigned_int(const Json& j, const char* key, const std::string& path) {
    return unsigned_int(field(j, key, path), at(path, key));
}

std::size_t index(const Json& j, const char* key, const std::string& path) {
    return static_cast<std::size_t>(unsigned_int(j, key, path));
}

bool boolean(const Json& j, const char* key, const std::string& path) {
    const Json& v = field(j, key, path);
    if (!v.is_boolean()) fail(at(path, key), "expected a boolean");
    return v.get<bool>();
}

std::string string(const Json& j, const char* key, const std::string& path) {
    const Json& v = field(j, key, path);
    if (!v.is_string()) fail(at(path, key), "expected a string");
    return v.get<std::string>();
}

Json vec(Vec2 v) { return Json::array({v.x, v.y}); }

Vec2 vec(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [x, y]");
    return {number(j[0], at(path, std::size_t{0})), number(j[1], at(path, std::size_t{1}))};
}

Json vecs(std::span<const Vec2> vs) {
    Json out = Json::array();
    for (Vec2 v : vs) out.push_back(vec(v));
    return out;
}

std::vector<Vec2> vecs(const Json& j, const std::string& path) {
    array(j, path);
    std::vector<Vec2> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vec(j[i], at(path, i)));
    return out;
}

std::vector<double> numbers(const Json& j, const std::string& path) {
    array(j, path);
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at(path, i)));
    return out;
}

const char* kind_name(ElementKind k) { return k == ElementKind::Line ? "line" : "point"; }

ElementKind element_kind(const Json& j, const char* key, const std::string& path) {
    const std::string s = string(j, key, path);
    if (s == "line") return ElementKind::Line;
    if (s == "point") return ElementKind::Point;
    fail(at(path, key), "expected \"point\" or \"line\"");
}

Json stats_json(const PropertyStats& s) {
    return {{"mean", s.mean}, {"std", s.std}, {"min", s.min}, {"max", s.max}};
}

PropertyStats stats_from(const Json& j, const std::string& path) {
    return {number(j, "mean", path), number(j, "std", path), number(j, "min", path), number(j, "max", path)};
}

void put_stats(Json& out, const char* key, const std::optional<PropertyStats>& s) {
    if (s) out[key] = stats_json(*s);
}

std::optional<PropertyStats> optional_stats(const Json& j, const char* key, const std::string& path) {
    const Json* v = optional_field(j, key);
    if (!v) return std::nullopt;
    return stats_from(*v, at(path, key));
}

Json props_json(const ElementProperties& p) {
    Json j = {{"kind", kind_name(p.kind)},
              {"size", p.size},
              {"length", p.length},
              {"width", p.width},
              {"orientation", p.orientation}};
    if (p.perp_offset) j["perp_offset"] = *p.perp_offset;
    return j;
}

ElementProperties props_from(const Json& j, const std::string& path) {
    ElementProperties p;
    p.kind = element_kind(j, "kind", path);
    p.size = number(j, "size", path);
    p.length = number(j, "length", path);
    p.width = number(j, "width", path);
    p.orientation = number(j, "orientation", path);
    if (const Json* v = optional_field(j, "perp_offset")) p.perp_offset = number(*v, at(path, "perp_offset"));
    return p;
}

Json pair_json(const PairProperties& p) {
    return {{"prox", p.prox}, {"par", p.par}, {"ov", p.ov}, {"sep", p.sep}, {"lines", p.lines}};
}

PairProperties pair_from(const Json& j, const std::string& path) {
    return {number(j, "prox", path), number(j, "par", path), number(j, "ov", path), number(j, "sep", path),
            boolean(j, "lines", path)};
}

// Analysis elements reference document strokes; placed elements embed theirs.
Json element_json(const Element& e, bool inline_strokes) {
    Json j = {{"kind", kind_name(e.kind)},
              {"valid", e.valid},
              {"center", vec(e.center)},
              {"size", e.size},
              {"axis", Json::array({vec(e.axis.p0), vec(e.axis.p1)})},
              {"length", e.length},
              {"width", e.width},
              {"min_draw_index", e.min_draw_index}};
    if (inline_strokes) {
        j["strokes"] = to_json(e.strokes);
    } else {
        Json ids = Json::array();
        for (const auto& s : e.strokes) ids.push_back(s.draw_index);
        j["strokes"] = std::move(ids);
    }
    return j;
}

Element element_from(const Json& j, const std::string& path,
                     const std::unordered_map<std::uint64_t, const Stroke*>* lookup) {
    Element e;
    e.kind = element_kind(j, "kind", path);
    e.valid = boolean(j, "valid", path);
    e.center = vec(field(j, "center", path), at(path, "center"));
    e.size = number(j, "size", path);
    const auto axis = vecs(field(j, "axis", path), at(path, "axis"));
    if (axis.size() != 2) fail(at(path, "axis"), "expected two endpoints");
    e.axis = {axis[0], axis[1]};
    e.length = number(j, "length", path);
    e.width = number(j, "width", path);
    e.min_draw_index = unsigned_int(j, "min_draw_index", path);
    const std::string spath = at(path, "strokes");
    const Json& strokes = field(j, "strokes", path);
    if (lookup) {
        array(strokes, spath);
        for (std::size_t i = 0; i < strokes.size(); ++i) {
            const std::uint64_t id = unsigned_int(strokes[i], at(spath, i));
            const auto it = lookup->find(id);
            if (it == lookup->end()) fail(at(spath, i), "unknown stroke id " + std::to_string(id));
            e.strokes.push_back(*it->second);
        }
    } else {
        e.strokes = strokes_from_json(strokes, spath);
    }
    return e;
}

Json graph_json(const NeighborGraph& g) {
    Json edges = Json::array();
    for (const auto& e : g.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"props", pair_json(e.props)}});
    return {{"nodes", g.nodes}, {"nearest", g.nearest}, {"edges", std::move(edges)},
            {"collinear_fallback", g.collinear_fallback}};
}

std::vector<std::size_t> indices(const Json& j, const std::string& path) {
    array(j, path);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(static_cast<std::size_t>(unsigned_int(j[i], at(path, i))));
    return out;
}

NeighborGraph graph_from(const Json& j, std::size_t element_count, const std::string& path) {
    NeighborGraph g;
    g.nodes = indices(field(j, "nodes", path), at(path, "nodes"));
    g.nearest = indices(field(j, "nearest", path), at(path, "nearest"));
    if (g.nearest.size() != g.nodes.size()) fail(at(path, "nearest"), "length differs from nodes");
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (g.nodes[i] >= element_count) fail(at(at(path, "nodes"), i), "element id out of range");
        if (g.nearest[i] >= element_count) fail(at(at(path, "nearest"), i), "element id out of range");
    }
    const std::string epath = at(path, "edges");
    const Json& edges = array(field(j, "edges", path), epath);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string p = at(epath, i);
        GraphEdge e{index(edges[i], "a", p), index(edges[i], "b", p),
                    pair_from(field(edges[i], "props", p), at(p, "props"))};
        if (e.a >= element_count || e.b >= element_count) fail(p, "element id out of range");
        g.edges.push_back(e);
    }
    g.collinear_fallback = boolean(j, "collinear_fallback", path);
    return g;
}

}  // namespace

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t byte = e.byte;
        const std::size_t upto = std::min(byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw Error(ErrorCode::Parse, "malformed JSON at byte " + std::to_string(byte) + " (line " +
                                          std::to_string(line) + ")");
    }
}

Json to_json(const Stroke& s) {
    return {{"id", s.draw_index},
            {"points", vecs(s.vertices)},
            {"width", s.width},
            {"color", Json::array({s.color.r, s.color.g, s.color.b, s.color.a})},
            {"opacity", s.opacity}};
}

Json to_json(std::span<const Stroke> strokes) {
    Json out = Json::array();
    for (const auto& s : strokes) out.push_back(to_json(s));
    return out;
}

std::vector<Stroke> strokes_from_json(const Json& j, const std::string& path) {
    array(j, path);
    std::vector<Stroke> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = at(path, i);
        Stroke s;
        s.draw_index = unsigned_int(j[i], "id", p);
        s.vertices = vecs(field(j[i], "points", p), at(p, "points"));
        if (const Json* v = optional_field(j[i], "width")) s.width = number(*v, at(p, "width"));
        if (const Json* v = optional_field(j[i], "opacity")) s.opacity = number(*v, at(p, "opacity"));
        if (const Json* v = optional_field(j[i], "color")) {
            const auto c = numbers(*v, at(p, "color"));
            if (c.size() != 4) fail(at(p, "color"), "expected [r, g, b, a]");
            s.color = {c[0], c[1], c[2], c[3]};
        }
        out.push_back(std::move(s));
    }
    return out;
}

Json to_json(const AnalysisParams& p) {
    const ReferenceFrame& f = p.frame;
    return {{"type", p.pattern_type == PatternType::Hatching ? "hatching" : "stippling"},
            {"epsilon", p.epsilon},
            {"frame",
             {{"kind", f.kind == FrameKind::OneD ? "1d" : "2d"},
              {"origin", vec(f.origin)},
              {"direction", vec(f.direction)},
              {"length", f.length},
              {"region", vecs(f.region)}}}};
}

AnalysisParams params_from_json(const Json& j, const std::string& path) {
    AnalysisParams p;
    const std::string type = string(j, "type", path);
    if (type == "hatching") p.pattern_type = PatternType::Hatching;
    else if (type == "stippling") p.pattern_type = PatternType::Stippling;
    else fail(at(path, "type"), "expected \"hatching\" or \"stippling\"");
    p.epsilon = number(j, "epsilon", path);

    const std::string fpath = at(path, "frame");
    const Json& f = field(j, "frame", path);
    const std::string kind = string(f, "kind", fpath);
    if (kind == "1d") p.frame.kind = FrameKind::OneD;
    else if (kind == "2d") p.frame.kind = FrameKind::TwoD;
    else fail(at(fpath, "kind"), "expected \"1d\" or \"2d\"");
    if (const Json* v = optional_field(f, "origin")) p.frame.origin = vec(*v, at(fpath, "origin"));
    if (const Json* v = optional_field(f, "direction")) p.frame.direction = vec(*v, at(fpath, "direction"));
    if (const Json* v = optional_field(f, "length")) p.frame.length = number(*v, at(fpath, "length"));
    if (const Json* v = optional_field(f, "region")) p.frame.region = vecs(*v, at(fpath, "region"));
    return p;
}

Json to_json(const TargetRegion& r) {
    return {{"kind", r.kind == RegionKind::Path1D ? "path" : "polygon"}, {"vertices", vecs(r.vertices)}};
}

TargetRegion region_from_json(const Json& j, const std::string& path) {
    TargetRegion r;
    const std::string kind = string(j, "kind", path);
    if (kind == "path") r.kind = RegionKind::Path1D;
    else if (kind == "polygon") r.kind = RegionKind::Region2D;
    else fail(at(path, "kind"), "expected \"path\" or \"polygon\"");
    r.vertices = vecs(field(j, "vertices", path), at(path, "vertices"));
    return r;
}

Json to_json(const SynthesisRequest& r) {
    Json j = {{"region", to_json(r.region)},
              {"behavior", to_string(r.behavior)},
              {"alpha", r.alpha},
              {"seed", r.seed},
              {"max_iters", r.max_iters}};
    if (r.r_star) j["r_star"] = *r.r_star;
    if (r.node_count) j["node_count"] = *r.node_count;
    return j;
}

SynthesisRequest request_from_json(const Json& j, const std::string& path) {
    SynthesisRequest r;
    r.region = region_from_json(field(j, "region", path), at(path, "region"));
    if (const Json* v = optional_field(j, "behavior")) {
        if (!v->is_string()) fail(at(path, "behavior"), "expected a string");
        const auto b = behavior_from_string(v->get<std::string>());
        if (!b) fail(at(path, "behavior"), "expected \"sampling\", \"copying\" or \"cloning\"");
        r.behavior = *b;
    }
    if (const Json* v = optional_field(j, "alpha")) r.alpha = number(*v, at(path, "alpha"));
    if (const Json* v = optional_field(j, "seed")) r.seed = unsigned_int(*v, at(path, "seed"));
    if (const Json* v = optional_field(j, "max_iters"))
        r.max_iters = static_cast<std::size_t>(unsigned_int(*v, at(path, "max_iters")));
    if (const Json* v = optional_field(j, "r_star")) r.r_star = number(*v, at(path, "r_star"));
    if (const Json* v = optional_field(j, "node_count"))
        r.node_count = static_cast<std::size_t>(unsigned_int(*v, at(path, "node_count")));
    return r;
}

Json to_json(const SynthesizedPattern& p) {
    Json elements = Json::array();
    for (const auto& e : p.elements) {
        elements.push_back({{"node_id", e.node_id},
                            {"source_element_id", e.source_element_id},
                            {"assigned", props_json(e.assigned)},
                            {"element", element_json(e.element, true)},
                            {"rotation", e.rotation},
                            {"scale", vec(e.scale)},
                            {"frozen", e.frozen}});
    }
    const Provenance& pr = p.provenance;
    return {{"request", to_json(p.request)},
            {"elements", std::move(elements)},
            {"graph", graph_json(p.graph)},
            {"node_params", p.node_params},
            {"provenance",
             {{"analysis_id", pr.analysis_id},
              {"seed", pr.seed},
              {"node_count", pr.node_count},
              {"lloyd_iterations", pr.lloyd_iterations},
              {"lloyd_ratio", pr.lloyd_ratio},
              {"lloyd_reached_max_iters", pr.lloyd_reached_max_iters},
              {"out_of_region_fraction", pr.out_of_region_fraction},
              {"corrected_edges", pr.corrected_edges},
              {"skipped_edges", pr.skipped_edges},
              {"warnings", pr.warnings}}}};
}

SynthesizedPattern pattern_from_json(const Json& j, const std::string& path) {
    SynthesizedPattern p;
    p.request = request_from_json(field(j, "request", path), at(path, "request"));
    const std::string epath = at(path, "elements");
    const Json& elements = array(field(j, "elements", path), epath);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const std::string ep = at(epath, i);
        const Json& e = elements[i];
        PlacedElement pe;
        pe.node_id = index(e, "node_id", ep);
        pe.source_element_id = index(e, "source_element_id", ep);
        pe.assigned = props_from(field(e, "assigned", ep), at(ep, "assigned"));
        pe.element = element_from(field(e, "element", ep), at(ep, "element"), nullptr);
        pe.rotation = number(e, "rotation", ep);
        pe.scale = vec(field(e, "scale", ep), at(ep, "scale"));
        pe.frozen = boolean(e, "frozen", ep);
        p.elements.push_back(std::move(pe));
    }
    p.graph = graph_from(field(j, "graph", path), p.elements.size(), at(path, "graph"));
    p.node_params = numbers(field(j, "node_params", path), at(path, "node_params"));

    const std::string ppath = at(path, "provenance");
    const Json& pr = object(field(j, "provenance", path), ppath);
    Provenance& out = p.provenance;
    out.analysis_id = string(pr, "analysis_id", ppath);
    out.seed = unsigned_int(pr, "seed", ppath);
    out.node_count = index(pr, "node_count", ppath);
    out.lloyd_iterations = index(pr, "lloyd_iterations", ppath);
    out.lloyd_ratio = number(pr, "lloyd_ratio", ppath);
    out.lloyd_reached_max_iters = boolean(pr, "lloyd_reached_max_iters", ppath);
    out.out_of_region_fraction = number(pr, "out_of_region_fraction", ppath);
    out.corrected_edges = index(pr, "corrected_edges", ppath);
    out.skipped_edges = index(pr, "skipped_edges", ppath);
    const std::string wpath = at(ppath, "warnings");
    const Json& warnings = array(field(pr, "warnings", ppath), wpath);
    for (std::size_t i = 0; i < warnings.size(); ++i) {
        if (!warnings[i].is_string()) fail(at(wpath, i), "expected a string");
        out.warnings.push_back(warnings[i].get<std::string>());
    }
    return p;
}

Json to_json(const PatternAnalysis& a) {
    Json elements = Json::array();
    for (const auto& e : a.elements) elements.push_back(element_json(e, false));
    Json props = Json::array();
    for (const auto& p : a.properties) props.push_back(p ? props_json(*p) : Json(nullptr));
    Json es = Json::object();
    put_stats(es, "size", a.element_stats.size);
    put_stats(es, "length", a.element_stats.length);
    put_stats(es, "width", a.element_stats.width);
    put_stats(es, "orientation", a.element_stats.orientation);
    put_stats(es, "perp_offset", a.element_stats.perp_offset);
    Json ps = {{"prox", stats_json(a.pair_stats.prox)}};
    put_stats(ps, "par", a.pair_stats.par);
    put_stats(ps, "ov", a.pair_stats.ov);
    put_stats(ps, "sep", a.pair_stats.sep);
    return {{"params", to_json(a.params)},
            {"elements", std::move(elements)},
            {"properties", std::move(props)},
            {"graph", graph_json(a.graph)},
            {"element_stats", std::move(es)},
            {"pair_stats", std::move(ps)},
            {"n_ref", a.n_ref},
            {"measure_ref", a.measure_ref}};
}

PatternAnalysis analysis_from_json(const Json& j, std::span<const Stroke> strokes, const std::string& path) {
    std::unordered_map<std::uint64_t, const Stroke*> lookup;
    for (const auto& s : strokes) lookup.emplace(s.draw_index, &s);

    PatternAnalysis a;
    a.params = params_from_json(field(j, "params", path), at(path, "params"));
    const std::string epath = at(path, "elements");
    const Json& elements = array(field(j, "elements", path), epath);
    for (std::size_t i = 0; i < elements.size(); ++i) a.elements.push_back(element_from(elements[i], at(epath, i), &lookup));

    const std::string ppath = at(path, "properties");
    const Json& props = array(field(j, "properties", path), ppath);
    if (props.size() != a.elements.size()) fail(ppath, "length differs from elements");
    for (std::size_t i = 0; i < props.size(); ++i) {
        if (props[i].is_null()) a.properties.emplace_back();
        else a.properties.emplace_back(props_from(props[i], at(ppath, i)));
    }
    a.graph = graph_from(field(j, "graph", path), a.elements.size(), at(path, "graph"));

    const std::string espath = at(path, "element_stats");
    const Json& es = object(field(j, "element_stats", path), espath);
    a.element_stats.size = optional_stats(es, "size", espath);
    a.element_stats.length = optional_stats(es, "length", espath);
    a.element_stats.width = optional_stats(es, "width", espath);
    a.element_stats.orientation = optional_stats(es, "orientation", espath);
    a.element_stats.perp_offset = optional_stats(es, "perp_offset", espath);

    const std::string pspath = at(path, "pair_stats");
    const Json& ps = field(j, "pair_stats", path);
    a.pair_stats.prox = stats_from(field(ps, "prox", pspath), at(pspath, "prox"));
    a.pair_stats.par = optional_stats(ps, "par", pspath);
    a.pair_stats.ov = optional_stats(ps, "ov", pspath);
    a.pair_stats.sep = optional_stats(ps, "sep", pspath);

    a.n_ref = index(j, "n_ref", path);
    a.measure_ref = number(j, "measure_ref", path);
    return a;
}

Json to_json(const AttributeMap& m) {
    Json width = Json::array(), opacity = Json::array(), color = Json::array();
    for (const auto& s : m.width) width.push_back({s.at, s.value});
    for (const auto& s : m.opacity) opacity.push_back({s.at, s.value});
    for (const auto& s : m.color) color.push_back({s.at, Json::array({s.color.r, s.color.g, s.color.b, s.color.a})});
    return {{"width", std::move(width)}, {"opacity", std::move(opacity)}, {"color", std::move(color)}};
}

AttributeMap attribute_map_from_json(const Json& j, const std::string& path) {
    object(j, path);
    AttributeMap m;
    auto scalar_stops = [&](const char* key, std::vector<ScalarStop>& out) {
        const Json* v = optional_field(j, key);
        if (!v) return;
        const std::string p = at(path, key);
        array(*v, p);
        for (std::size_t i = 0; i < v->size(); ++i) {
            const auto pair = numbers((*v)[i], at(p, i));
            if (pair.size() != 2) fail(at(p, i), "expected [luminance, value]");
            out.push_back({pair[0], pair[1]});
        }
    };
    scalar_stops("width", m.width);
    scalar_stops("opacity", m.opacity);
    if (const Json* v = optional_field(j, "color")) {
        const std::string p = at(path, "color");
        array(*v, p);
        for (std::size_t i = 0; i < v->size(); ++i) {
            const Json& stop = (*v)[i];
            const std::string sp = at(p, i);
            if (!stop.is_array() || stop.size() != 2) fail(sp, "expected [luminance, [r, g, b, a]]");
            const auto c = numbers(stop[1], at(sp, std::size_t{1}));
            if (c.size() != 4) fail(at(sp, std::size_t{1}), "expected [r, g, b, a]");
            m.color.push_back({number(stop[0], at(sp, std::size_t{0})), {c[0], c[1], c[2], c[3]}});
        }
    }
    return m;
}

PatternDocument load_document(std::string_view text) {
    const Json j = parse_json(text);
    const std::string root = "$";
    object(j, root);
    const Json& version = field(j, "version", root);
    if (!version.is_number_integer()) fail(at(root, "version"), "expected an integer");
    if (version.get<long long>() != kDocumentVersion)
        throw Error(ErrorCode::UnsupportedVersion, "unsupported document version " + version.dump());

    PatternDocument doc;
    if (const Json* v = optional_field(j, "strokes")) doc.strokes = strokes_from_json(*v, at(root, "strokes"));
    std::unordered_map<std::uint64_t, std::size_t> seen;
    for (std::size_t i = 0; i < doc.strokes.size(); ++i)
        if (!seen.emplace(doc.strokes[i].draw_index, i).second)
            fail(at(at(root, "strokes"), i), "duplicate stroke id " + std::to_string(doc.strokes[i].draw_index));
    if (const Json* v = optional_field(j, "params")) doc.params = params_from_json(*v, at(root, "params"));
    if (const Json* v = optional_field(j, "analysis"))
        doc.analysis = analysis_from_json(*v, doc.strokes, at(root, "analysis"));
    if (const Json* v = optional_field(j, "patterns")) {
        const std::string ppath = at(root, "patterns");
        array(*v, ppath);
        for (std::size_t i = 0; i < v->size(); ++i) doc.patterns.push_back(pattern_from_json((*v)[i], at(ppath, i)));
    }
    return doc;
}

std::string save_document(const PatternDocument& doc) {
    Json j = {{"version", doc.version}, {"strokes", to_json(doc.strokes)}, {"params", to_json(doc.params)}};
    if (doc.analysis) {
        // Elements are stored by stroke id, so their strokes must be the
        // document's strokes.
        std::unordered_map<std::uint64_t, const Stroke*> lookup;
        for (const auto& s : doc.strokes) lookup.emplace(s.draw_index, &s);
        for (const auto& e : doc.analysis->elements)
            for (const auto& s : e.strokes) {
                const auto it = lookup.find(s.draw_index);
                if (it == lookup.end() || !(*it->second == s))
                    throw Error(ErrorCode::Precondition,
                                "analysis stroke " + std::to_string(s.draw_index) + " is not a document stroke");
            }
        j["analysis"] = to_json(*doc.analysis);
    }
    if (!doc.patterns.empty()) {
        Json patterns = Json::array();
        for (const auto& p : doc.patterns) patterns.push_back(to_json(p));
        j["patterns"] = std::move(patterns);
    }
    return j.dump(1) + "\n";
}

}  // namespace strokesyn
