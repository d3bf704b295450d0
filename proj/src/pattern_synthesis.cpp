#include "strokesyn/pattern_synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "strokesyn/error.hpp"

namespace strokesyn {

const char* to_string(Behavior b) {
    switch (b) {
        case Behavior::Sampling: return "sampling";
        case Behavior::Copying: return "copying";
        case Behavior::Cloning: return "cloning";
    }
    return "copying";
}

std::optional<Behavior> behavior_from_string(const std::string& s) {
    if (s == "sampling") return Behavior::Sampling;
    if (s == "copying") return Behavior::Copying;
    if (s == "cloning") return Behavior::Cloning;
    return std::nullopt;
}

void validate(const SynthesisRequest& r) {
    validate(r.region);
    if (!(r.alpha >= 0.0 && r.alpha <= 1.0))
        throw Error(ErrorCode::Precondition, "correction amount must lie in [0, 1]");
    if (r.r_star && !(*r.r_star >= 0.0)) throw Error(ErrorCode::Precondition, "r_star must be non-negative");
    if (r.node_count && *r.node_count < 2) throw Error(ErrorCode::InsufficientPoints, "node count must be at least 2");
    if (r.max_iters < 1) throw Error(ErrorCode::Precondition, "max_iters must be at least 1");
}

namespace {

class Fnv1a {
public:
    void add(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h_ ^= (v >> (8 * i)) & 0xffu;
            h_ *= 0x100000001b3ULL;
        }
    }
    void add(double v) { add(std::bit_cast<std::uint64_t>(v)); }
    void add(const PropertyStats& s) {
        add(s.mean);
        add(s.std);
        add(s.min);
        add(s.max);
    }
    void add(const std::optional<PropertyStats>& s) {
        add(static_cast<std::uint64_t>(s.has_value()));
        if (s) add(*s);
    }
    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::string analysis_fingerprint(const PatternAnalysis& a) {
    Fnv1a h;
    h.add(static_cast<std::uint64_t>(a.params.pattern_type));
    h.add(static_cast<std::uint64_t>(a.params.frame.kind));
    h.add(a.params.epsilon);
    h.add(static_cast<std::uint64_t>(a.n_ref));
    h.add(a.measure_ref);
    for (const auto& e : a.elements) {
        h.add(static_cast<std::uint64_t>(e.valid));
        h.add(e.center.x);
        h.add(e.center.y);
        h.add(e.spread());
        h.add(e.length);
    }
    const auto& es = a.element_stats;
    for (const auto* s : {&es.size, &es.length, &es.width, &es.orientation, &es.perp_offset}) h.add(*s);
    h.add(a.pair_stats.prox);
    for (const auto* s : {&a.pair_stats.par, &a.pair_stats.ov, &a.pair_stats.sep}) h.add(*s);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.value()));
    return buf;
}

SampledValue sample_property(const PropertyStats& stats, Rng& rng) {
    if (!(stats.min <= stats.max)) throw Error(ErrorCode::Precondition, "stats min exceeds max");
    if (stats.std == 0.0) return {stats.mean, false};
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        const double v = stats.mean + stats.std * rng.standard_normal();
        if (v >= stats.min && v <= stats.max) return {v, false};
    }
    return {std::clamp(stats.mean, stats.min, stats.max), true};
}

namespace {

const std::vector<std::size_t>& valid_ids(const PatternAnalysis& a) {
    if (a.graph.nodes.empty()) throw Error(ErrorCode::InsufficientElements, "analysis has no valid elements");
    return a.graph.nodes;
}

const ElementProperties& props_of(const PatternAnalysis& a, std::size_t id) {
    const auto& p = a.properties.at(id);
    if (!p) throw Error(ErrorCode::Precondition, "element " + std::to_string(id) + " has no properties");
    return *p;
}

}  // namespace

Assignment assign_element_properties(Behavior behavior, const PatternAnalysis& analysis, Rng& rng) {
    const auto& ids = valid_ids(analysis);
    const ElementKind kind = element_kind_for(analysis.params.pattern_type);
    const bool has_offset = analysis.element_stats.perp_offset.has_value();
    Assignment out;
    out.props.kind = kind;

    switch (behavior) {
        case Behavior::Cloning: {
            const std::size_t id = ids[rng.index(ids.size())];
            out.shape_source = id;
            out.props = props_of(analysis, id);
            return out;
        }
        case Behavior::Copying: {
            auto pick = [&]() -> const ElementProperties& { return props_of(analysis, ids[rng.index(ids.size())]); };
            if (kind == ElementKind::Point) {
                out.props.size = pick().size;
            } else {
                out.props.length = pick().length;
                out.props.width = pick().width;
                out.props.orientation = pick().orientation;
            }
            if (has_offset) out.props.perp_offset = pick().perp_offset;
            return out;
        }
        case Behavior::Sampling: {
            const auto& es = analysis.element_stats;
            if (kind == ElementKind::Point) {
                out.props.size = sample_property(*es.size, rng).value;
            } else {
                out.props.length = sample_property(*es.length, rng).value;
                out.props.width = sample_property(*es.width, rng).value;
                out.props.orientation = sample_property(*es.orientation, rng).value;
            }
            if (has_offset) out.props.perp_offset = sample_property(*es.perp_offset, rng).value;
            out.shape_source = ids[rng.index(ids.size())];
            return out;
        }
    }
    return out;
}

std::size_t shape_source_by_proximity(const PatternAnalysis& analysis, double proximity, Rng& rng) {
    const auto& edges = analysis.graph.edges;
    if (edges.empty()) {
        const auto& ids = valid_ids(analysis);
        return ids[rng.index(ids.size())];
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < edges.size(); ++k)
        if (std::abs(edges[k].props.prox - proximity) < std::abs(edges[best].props.prox - proximity)) best = k;
    return rng.index(2) == 0 ? edges[best].a : edges[best].b;
}

PlacedElement instantiate(const NodeFrame& node, const ElementProperties& props, const Element& src,
                          const ReferenceFrame& source_frame, double eps) {
    if (!src.valid) throw Error(ErrorCode::Precondition, "shape source must be a valid element");
    PlacedElement p;
    p.assigned = props;

    const Vec2 src_x = src.kind == ElementKind::Line ? src.axis.direction() : source_frame.main_direction();
    const Vec2 src_y = perp(src_x);
    const double base_angle = std::atan2(node.base_direction.y, node.base_direction.x);

    Element& e = p.element;
    e.kind = src.kind;
    e.valid = true;
    double angle = base_angle;
    if (src.kind == ElementKind::Line) {
        const double width = std::min(props.width, eps);
        p.scale = {props.length / src.length, src.width > 0.0 ? width / src.width : 1.0};
        angle += props.orientation;
        e.length = props.length;
        e.width = src.width > 0.0 ? width : 0.0;
    } else {
        const double size = std::min(props.size, eps);
        const double s = src.size > 0.0 ? size / src.size : 1.0;
        p.scale = {s, s};
        e.size = src.size > 0.0 ? size : 0.0;
    }
    p.rotation = angle;

    Vec2 center = node.position;
    if (node.along_path && props.perp_offset) center += perp(node.base_direction) * *props.perp_offset;
    e.center = center;
    const Vec2 ex = unit_from_angle(angle);
    const Vec2 ey = perp(ex);
    if (e.kind == ElementKind::Line) e.axis = {center - ex * (0.5 * e.length), center + ex * (0.5 * e.length)};

    e.strokes = src.strokes;
    for (auto& s : e.strokes) {
        for (Vec2& v : s.vertices) {
            const Vec2 q = v - src.center;
            v = center + ex * (dot(q, src_x) * p.scale.x) + ey * (dot(q, src_y) * p.scale.y);
        }
    }
    return p;
}

PairProperties pair_targets(Behavior behavior, const PatternAnalysis& analysis, const PairProperties& current,
                            Rng& rng) {
    const auto& edges = analysis.graph.edges;
    if (edges.empty()) throw Error(ErrorCode::InsufficientElements, "analysis graph has no edges");
    const auto& ps = analysis.pair_stats;
    PairProperties t;
    t.lines = current.lines && ps.par.has_value();

    auto nearest_edge = [&](auto field, double value) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < edges.size(); ++k)
            if (std::abs(field(edges[k].props) - value) < std::abs(field(edges[best].props) - value)) best = k;
        return best;
    };
    constexpr auto prox = [](const PairProperties& p) { return p.prox; };
    constexpr auto par = [](const PairProperties& p) { return p.par; };
    constexpr auto ov = [](const PairProperties& p) { return p.ov; };
    constexpr auto sep = [](const PairProperties& p) { return p.sep; };

    switch (behavior) {
        case Behavior::Sampling:
            t.prox = sample_property(ps.prox, rng).value;
            if (t.lines) {
                t.par = sample_property(*ps.par, rng).value;
                t.ov = sample_property(*ps.ov, rng).value;
                t.sep = sample_property(*ps.sep, rng).value;
            }
            break;
        case Behavior::Copying:
            t.prox = edges[nearest_edge(prox, current.prox)].props.prox;
            if (t.lines) {
                t.par = edges[nearest_edge(par, current.par)].props.par;
                t.ov = edges[nearest_edge(ov, current.ov)].props.ov;
                t.sep = edges[nearest_edge(sep, current.sep)].props.sep;
            }
            break;
        case Behavior::Cloning: {
            const PairProperties& ref = edges[nearest_edge(prox, current.prox)].props;
            t = ref;
            t.lines = current.lines && ref.lines;
            break;
        }
    }
    return t;
}

void transform_placed(PlacedElement& p, double rotation, Vec2 translation) {
    Element& e = p.element;
    const Vec2 c = e.center;
    auto move = [&](Vec2 v) { return c + rotated(v - c, rotation) + translation; };
    for (auto& s : e.strokes)
        for (Vec2& v : s.vertices) v = move(v);
    if (e.kind == ElementKind::Line) e.axis = {move(e.axis.p0), move(e.axis.p1)};
    e.center = c + translation;
    p.rotation += rotation;
}

PairCorrection correction_for(const Element& moved, const Element& other, const PairProperties& targets,
                              double alpha) {
    PairCorrection c;
    const PairGeometry g = measure_pair(moved, other);
    if (!g.props.lines) {
        if (g.props.prox == 0.0) {
            c.skipped = true;
            return c;
        }
        c.translation = g.offset / g.props.prox * ((targets.prox - g.props.prox) * alpha);
        return c;
    }

    const double sign = g.theta >= 0.0 ? 1.0 : -1.0;
    c.rotation = alpha * sign * (targets.par - g.props.par) * (kPi / 2.0);

    Element turned = moved;
    const Vec2 mid = turned.center;
    turned.axis = {mid + rotated(turned.axis.p0 - mid, c.rotation), mid + rotated(turned.axis.p1 - mid, c.rotation)};
    const PairGeometry h = measure_pair(turned, other);

    const double ov_len = h.overlap.norm();
    const double sep_len = h.separation.norm();
    const Vec2 along = ov_len > 0.0 ? h.overlap / ov_len : h.bisector;
    const Vec2 across = sep_len > 0.0 ? h.separation / sep_len : perp(h.bisector);
    const Vec2 delta = along * ((targets.ov - h.props.ov) * h.projected_length_sum / 2.0);
    const Vec2 gamma = -across * (targets.sep - h.props.sep);
    c.translation = (delta + gamma) * alpha;
    return c;
}

NeighborGraph placed_graph(const SynthesizedPattern& pattern) {
    std::vector<Element> elements;
    elements.reserve(pattern.elements.size());
    for (const auto& p : pattern.elements) elements.push_back(p.element);
    if (pattern.request.region.kind == RegionKind::Path1D && pattern.node_params.size() == elements.size()) {
        std::vector<std::size_t> order(elements.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pattern.node_params[a] < pattern.node_params[b];
        });
        return build_chain_graph(elements, order);
    }
    return build_neighbor_graph(elements, ReferenceFrame::two_d());
}

SynthesizedPattern correct(SynthesizedPattern pattern, const PatternAnalysis& analysis, Behavior behavior,
                           double alpha, Rng& rng) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::Precondition, "correction amount must lie in [0, 1]");
    const NeighborGraph& graph = pattern.graph;
    std::vector<std::size_t> order(graph.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return graph.edges[x].props.prox < graph.edges[y].props.prox;
    });

    for (std::size_t k : order) {
        const GraphEdge& edge = graph.edges[k];
        PlacedElement& a = pattern.elements.at(edge.a);
        PlacedElement& b = pattern.elements.at(edge.b);
        if (a.frozen || b.frozen) continue;
        const bool a_to_b = graph.nearest_of(edge.a) == edge.b;
        const bool b_to_a = graph.nearest_of(edge.b) == edge.a;
        // The mover is the node whose nearest neighbor is the other endpoint;
        // mutual pairs move the higher id.
        const bool move_b = (a_to_b && b_to_a) || b_to_a;
        PlacedElement& moved = move_b ? b : a;
        PlacedElement& other = move_b ? a : b;

        const PairProperties current = measure_pair(moved.element, other.element).props;
        Rng edge_rng = rng.split(k);
        const PairProperties targets = pair_targets(behavior, analysis, current, edge_rng);
        const PairCorrection c = correction_for(moved.element, other.element, targets, alpha);
        if (c.skipped) {
            ++pattern.provenance.skipped_edges;
            pattern.provenance.warnings.push_back("edge " + std::to_string(edge.a) + "-" + std::to_string(edge.b) +
                                                  " skipped: coincident centers");
            continue;
        }
        transform_placed(moved, c.rotation, c.translation);
        a.frozen = true;
        b.frozen = true;
        ++pattern.provenance.corrected_edges;
    }
    pattern.graph = placed_graph(pattern);
    return pattern;
}

SynthesizedPattern synthesize(const PatternAnalysis& analysis, const SynthesisRequest& request) {
    validate(request);
    if (analysis.n_ref < 2 || analysis.graph.edges.empty())
        throw Error(ErrorCode::InsufficientElements, "analysis needs at least 2 valid elements");
    const Rng root(request.seed);
    const TargetRegion& region = request.region;

    const std::size_t n = request.node_count.value_or(seed_count(analysis, region));
    const PropertyStats& prox = analysis.pair_stats.prox;
    const double r_star = request.r_star.value_or(prox.mean > 0.0 ? prox.std / prox.mean : 0.0);

    Distribution dist = lloyd_relax(n, region, r_star, root.split(0).seed(), request.max_iters);
    dist = rescale_to_mean(dist, prox.mean, region);
    const std::vector<double> nn = nearest_neighbor_lengths(dist);

    SynthesizedPattern pattern;
    pattern.request = request;
    pattern.node_params = dist.params;
    pattern.elements.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng = root.split(2 + i);
        const Assignment asg = assign_element_properties(request.behavior, analysis, rng);
        const std::size_t src = asg.shape_source.value_or(shape_source_by_proximity(analysis, nn[i], rng));
        NodeFrame node;
        if (region.kind == RegionKind::Path1D) {
            node.position = region.point_at(dist.params[i]);
            node.base_direction = region.tangent_at(dist.params[i]);
            node.along_path = true;
        } else {
            node.position = dist.points[i];
        }
        PlacedElement placed =
            instantiate(node, asg.props, analysis.elements.at(src), analysis.params.frame, analysis.params.epsilon);
        placed.node_id = i;
        placed.source_element_id = src;
        placed.element.min_draw_index = i;
        pattern.elements.push_back(std::move(placed));
    }

    Provenance& prov = pattern.provenance;
    prov.analysis_id = analysis_fingerprint(analysis);
    prov.seed = request.seed;
    prov.node_count = n;
    prov.lloyd_iterations = dist.iterations_used;
    prov.lloyd_ratio = dist.final_ratio;
    prov.lloyd_reached_max_iters = dist.reached_max_iters;
    prov.out_of_region_fraction = dist.out_of_region_fraction;
    if (dist.reached_max_iters)
        prov.warnings.push_back("Lloyd relaxation stopped at max_iters before reaching r*");
    if (!request.node_count && n == 2 &&
        std::round(static_cast<double>(analysis.n_ref) * region.measure() / analysis.measure_ref) < 2.0)
        prov.warnings.push_back("node count clamped to 2");

    pattern.graph = placed_graph(pattern);
    Rng correction_rng = root.split(1);
    pattern = correct(std::move(pattern), analysis, request.behavior, request.alpha, correction_rng);
    return pattern;
}

std::vector<Stroke> pattern_strokes(const SynthesizedPattern& pattern) {
    std::vector<Stroke> out;
    std::uint64_t next = 0;
    for (const auto& p : pattern.elements) {
        for (Stroke s : p.element.strokes) {
            s.draw_index = next++;
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace strokesyn
