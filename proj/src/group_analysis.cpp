#include "strokesyn/group_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "strokesyn/delaunay.hpp"
#include "strokesyn/error.hpp"

namespace strokesyn {

PairGeometry measure_pair(const Element& moved, const Element& other) {
    PairGeometry g;
    g.offset = moved.center - other.center;
    g.props.prox = g.offset.norm();
    if (moved.kind != ElementKind::Line || other.kind != ElementKind::Line) return g;

    g.props.lines = true;
    const Vec2 dm = moved.axis.direction();
    Vec2 d_other = other.axis.direction();
    g.theta = signed_acute_angle(d_other, dm);
    g.props.par = std::abs(2.0 * g.theta / kPi);

    if (dot(dm, d_other) < 0.0) d_other = -d_other;
    g.bisector = normalized(dm + d_other);
    const Vec2 normal = perp(g.bisector);
    g.overlap = g.bisector * dot(g.offset, g.bisector);
    g.separation = normal * dot(-g.offset, normal);
    g.projected_length_sum = moved.length * std::abs(dot(dm, g.bisector)) +
                             other.length * std::abs(dot(d_other, g.bisector));
    if (!(g.projected_length_sum > 0.0))
        throw Error(ErrorCode::UndefinedOverlap, "projected line lengths sum to zero");
    g.props.ov = 2.0 * g.overlap.norm() / g.projected_length_sum;
    g.props.sep = g.separation.norm();
    return g;
}

PairProperties pair_properties(const Element& a, const Element& b) { return measure_pair(a, b).props; }

PropertyStats compute_stats(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::Precondition, "statistics over an empty sample");
    PropertyStats s;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double var = 0.0;
    for (double v : values) var += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(var / n);
    // Summation rounding must not push the mean outside the sample range.
    s.mean = std::clamp(s.mean, s.min, s.max);
    return s;
}

std::optional<std::size_t> NeighborGraph::nearest_of(std::size_t id) const {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
    if (it == nodes.end() || *it != id) return std::nullopt;
    return nearest[static_cast<std::size_t>(it - nodes.begin())];
}

namespace {

struct Candidate {
    std::size_t a;
    std::size_t b;
};

// Keeps candidate edges where one endpoint is the other's nearest neighbor,
// with nearest neighbors chosen among the candidates' endpoints.
NeighborGraph filter_nearest(std::span<const Element> elements, std::vector<std::size_t> nodes,
                             const std::vector<Candidate>& candidates) {
    NeighborGraph g;
    g.nodes = std::move(nodes);
    const std::size_t inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best(elements.size(), inf);
    std::vector<double> best_d(elements.size(), std::numeric_limits<double>::infinity());
    auto offer = [&](std::size_t u, std::size_t v) {
        const double d = distance(elements[u].center, elements[v].center);
        if (d < best_d[u] || (d == best_d[u] && v < best[u])) {
            best_d[u] = d;
            best[u] = v;
        }
    };
    for (const auto& c : candidates) {
        offer(c.a, c.b);
        offer(c.b, c.a);
    }
    for (std::size_t id : g.nodes) g.nearest.push_back(best[id]);
    for (const auto& c : candidates) {
        if (best[c.a] != c.b && best[c.b] != c.a) continue;
        GraphEdge e;
        e.a = std::min(c.a, c.b);
        e.b = std::max(c.a, c.b);
        e.props = pair_properties(elements[e.a], elements[e.b]);
        g.edges.push_back(e);
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const GraphEdge& x, const GraphEdge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end(),
                              [](const GraphEdge& x, const GraphEdge& y) { return x.a == y.a && x.b == y.b; }),
                  g.edges.end());
    return g;
}

std::vector<Candidate> chain_candidates(std::span<const Element> elements, const std::vector<std::size_t>& nodes,
                                        Vec2 origin, Vec2 direction) {
    std::vector<std::size_t> order = nodes;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return dot(elements[x].center - origin, direction) < dot(elements[y].center - origin, direction);
    });
    std::vector<Candidate> out;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) out.push_back({order[k], order[k + 1]});
    return out;
}

Vec2 principal_axis(std::span<const Vec2> pts) {
    Vec2 mean{};
    for (Vec2 p : pts) mean += p;
    mean = mean / static_cast<double>(pts.size());
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (Vec2 p : pts) {
        const Vec2 d = p - mean;
        sxx += d.x * d.x;
        syy += d.y * d.y;
        sxy += d.x * d.y;
    }
    return unit_from_angle(0.5 * std::atan2(2.0 * sxy, sxx - syy));
}

}  // namespace

NeighborGraph build_neighbor_graph(std::span<const Element> elements, const ReferenceFrame& frame) {
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i].valid) nodes.push_back(i);
    if (nodes.size() < 2)
        throw Error(ErrorCode::InsufficientElements,
                    "need at least 2 valid elements, found " + std::to_string(nodes.size()));

    if (frame.kind == FrameKind::OneD)
        return filter_nearest(elements, nodes, chain_candidates(elements, nodes, frame.origin, frame.direction));

    std::vector<Vec2> centers;
    centers.reserve(nodes.size());
    for (std::size_t id : nodes) centers.push_back(elements[id].center);
    const Triangulation tri = delaunay(centers);
    if (tri.triangles.empty()) {
        auto g = filter_nearest(elements, nodes,
                                chain_candidates(elements, nodes, centers.front(), principal_axis(centers)));
        g.collinear_fallback = true;
        return g;
    }
    std::vector<Candidate> candidates;
    candidates.reserve(tri.edges.size());
    for (const auto& [i, j] : tri.edges) candidates.push_back({nodes[i], nodes[j]});
    return filter_nearest(elements, nodes, candidates);
}

NeighborGraph build_chain_graph(std::span<const Element> elements, std::span<const std::size_t> order) {
    std::vector<std::size_t> chain;
    for (std::size_t id : order)
        if (elements[id].valid) chain.push_back(id);
    if (chain.size() < 2)
        throw Error(ErrorCode::InsufficientElements,
                    "need at least 2 valid elements, found " + std::to_string(chain.size()));
    std::vector<Candidate> candidates;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) candidates.push_back({chain[k], chain[k + 1]});
    std::sort(chain.begin(), chain.end());
    return filter_nearest(elements, chain, candidates);
}

ElementStats compute_element_stats(const PatternAnalysis& a) {
    std::vector<double> size, length, width, orientation, offset;
    for (const auto& p : a.properties) {
        if (!p) continue;
        if (p->kind == ElementKind::Point) {
            size.push_back(p->size);
        } else {
            length.push_back(p->length);
            width.push_back(p->width);
            orientation.push_back(p->orientation);
        }
        if (p->perp_offset) offset.push_back(*p->perp_offset);
    }
    ElementStats s;
    if (!size.empty()) s.size = compute_stats(size);
    if (!length.empty()) {
        s.length = compute_stats(length);
        s.width = compute_stats(width);
        s.orientation = compute_stats(orientation);
    }
    if (!offset.empty()) s.perp_offset = compute_stats(offset);
    return s;
}

PairStats compute_pair_stats(const NeighborGraph& g) {
    std::vector<double> prox, par, ov, sep;
    for (const auto& e : g.edges) {
        prox.push_back(e.props.prox);
        if (e.props.lines) {
            par.push_back(e.props.par);
            ov.push_back(e.props.ov);
            sep.push_back(e.props.sep);
        }
    }
    PairStats s;
    s.prox = compute_stats(prox);
    if (!par.empty()) {
        s.par = compute_stats(par);
        s.ov = compute_stats(ov);
        s.sep = compute_stats(sep);
    }
    return s;
}

double reference_measure(std::span<const Element> elements, const ReferenceFrame& frame) {
    if (frame.kind == FrameKind::OneD) return frame.length;
    if (frame.region.size() >= 3) return polygon_area(frame.region);
    BoundingBox box;
    for (const auto& e : elements) {
        if (!e.valid) continue;
        for (const auto& s : e.strokes)
            for (Vec2 v : s.vertices) box.extend(v);
    }
    return box.area();
}

PatternAnalysis analyze_elements(std::vector<Element> elements, const AnalysisParams& params) {
    PatternAnalysis a;
    a.params = params;
    a.elements = std::move(elements);
    a.properties.reserve(a.elements.size());
    for (const auto& e : a.elements) {
        if (e.valid) a.properties.emplace_back(element_properties(e, params.frame));
        else a.properties.emplace_back(std::nullopt);
    }
    a.graph = build_neighbor_graph(a.elements, params.frame);
    a.n_ref = a.graph.nodes.size();
    a.element_stats = compute_element_stats(a);
    a.pair_stats = compute_pair_stats(a.graph);
    a.measure_ref = reference_measure(a.elements, params.frame);
    return a;
}

PatternAnalysis analyze(std::span<const Stroke> strokes, const AnalysisParams& params) {
    return analyze_elements(cluster_elements(strokes, params), params);
}

}  // namespace strokesyn
