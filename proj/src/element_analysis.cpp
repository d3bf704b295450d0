#include "strokesyn/element_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "strokesyn/error.hpp"

namespace strokesyn {

ElementKind element_kind_for(PatternType type) {
    return type == PatternType::Hatching ? ElementKind::Line : ElementKind::Point;
}

namespace {

std::vector<Vec2> measurement_samples(std::span<const Stroke> strokes, double eps) {
    std::vector<Vec2> out;
    for (const auto& s : strokes) {
        const Stroke r = resample_stroke(s, measurement_step(s, eps));
        out.insert(out.end(), r.vertices.begin(), r.vertices.end());
    }
    return out;
}

BoundingBox strokes_box(std::span<const Stroke> strokes) {
    BoundingBox b;
    for (const auto& s : strokes)
        for (Vec2 v : s.vertices) b.extend(v);
    return b;
}

double box_gap(const BoundingBox& a, const BoundingBox& b) {
    const double dx = std::max({0.0, a.lo.x - b.hi.x, b.lo.x - a.hi.x});
    const double dy = std::max({0.0, a.lo.y - b.hi.y, b.lo.y - a.hi.y});
    return std::hypot(dx, dy);
}

Element make_point(std::vector<Stroke> strokes, std::span<const Vec2> samples, double eps) {
    const auto cs = centroid_and_spread(samples);
    Element e;
    e.kind = ElementKind::Point;
    e.center = cs.center;
    e.size = cs.spread;
    e.valid = cs.spread <= eps;
    e.min_draw_index = std::numeric_limits<std::uint64_t>::max();
    for (const auto& s : strokes) e.min_draw_index = std::min(e.min_draw_index, s.draw_index);
    e.strokes = std::move(strokes);
    return e;
}

Element make_line(std::vector<Stroke> strokes, const LineSeg& axis, double eps) {
    Element e;
    e.kind = ElementKind::Line;
    e.axis = axis;
    e.center = axis.midpoint();
    e.length = axis.length();
    e.width = line_spread(strokes, axis);
    e.valid = e.width <= eps;
    e.min_draw_index = std::numeric_limits<std::uint64_t>::max();
    for (const auto& s : strokes) e.min_draw_index = std::min(e.min_draw_index, s.draw_index);
    e.strokes = std::move(strokes);
    return e;
}

std::vector<Stroke> concat(const std::vector<Stroke>& a, const std::vector<Stroke>& b) {
    std::vector<Stroke> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

Element fit_point(const Stroke& s, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorCode::Precondition, "epsilon must be positive");
    validate(s);
    const Stroke one[] = {s};
    return make_point({s}, measurement_samples(one, eps), eps);
}

double line_spread(std::span<const Stroke> strokes, const LineSeg& axis) {
    double to_axis = 0.0;
    std::vector<std::vector<Vec2>> polylines;
    polylines.reserve(strokes.size());
    for (const auto& s : strokes) {
        // Distance to a segment is convex along each stroke segment, so the
        // maximum over the polyline is attained at a vertex.
        to_axis = std::max(to_axis, hausdorff_directed(s.vertices, axis));
        polylines.push_back(s.vertices);
    }
    const double from_axis = hausdorff_directed(axis, polylines);
    return 2.0 * std::max(to_axis, from_axis);
}

Element fit_line(const Stroke& s, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorCode::Precondition, "epsilon must be positive");
    validate(s);
    LineSeg axis;
    try {
        axis = endpoint_virtual_line(s);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::DegenerateLine) throw;
        Element e;
        e.kind = ElementKind::Line;
        e.axis = {s.vertices.front(), s.vertices.back()};
        e.center = e.axis.midpoint();
        e.strokes = {s};
        e.valid = false;
        e.min_draw_index = s.draw_index;
        return e;
    }
    return make_line({s}, axis, eps);
}

LineSeg fit_merged_axis(const LineSeg& a, const LineSeg& b) {
    const Vec2 pts[4] = {a.p0, a.p1, b.p0, b.p1};
    Vec2 mean{};
    for (Vec2 p : pts) mean += p;
    mean = mean / 4.0;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (Vec2 p : pts) {
        const Vec2 d = p - mean;
        sxx += d.x * d.x;
        syy += d.y * d.y;
        sxy += d.x * d.y;
    }
    Vec2 dir = unit_from_angle(0.5 * std::atan2(2.0 * sxy, sxx - syy));
    if (dot(dir, a.p1 - a.p0) < 0.0) dir = -dir;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Vec2 p : pts) {
        const double t = dot(p - mean, dir);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    return {mean + dir * lo, mean + dir * hi};
}

std::optional<Element> try_merge(const Element& a, const Element& b, double eps) {
    if (a.kind != b.kind) throw Error(ErrorCode::Precondition, "cannot merge a point with a line");
    if (!a.valid || !b.valid) throw Error(ErrorCode::Precondition, "only valid elements can be merged");
    auto strokes = concat(a.strokes, b.strokes);
    Element merged;
    if (a.kind == ElementKind::Point) {
        merged = make_point(std::move(strokes), measurement_samples(concat(a.strokes, b.strokes), eps), eps);
    } else {
        const LineSeg axis = fit_merged_axis(a.axis, b.axis);
        if (axis.degenerate()) return std::nullopt;
        // Vertex-to-axis distances are cheap and already bound the spread.
        for (const auto& s : strokes)
            if (2.0 * hausdorff_directed(s.vertices, axis) > eps) return std::nullopt;
        merged = make_line(std::move(strokes), axis, eps);
    }
    if (!merged.valid) return std::nullopt;
    return merged;
}

std::vector<Element> cluster_elements(std::span<const Stroke> strokes, const AnalysisParams& params) {
    validate(params);
    {
        std::unordered_set<std::uint64_t> seen;
        for (const auto& s : strokes)
            if (!seen.insert(s.draw_index).second)
                throw Error(ErrorCode::Precondition,
                            "duplicate draw_index " + std::to_string(s.draw_index));
    }
    const double eps = params.epsilon;
    const ElementKind kind = element_kind_for(params.pattern_type);

    struct Work {
        Element element;
        std::vector<Vec2> samples;  // points only
        BoundingBox box;
        std::size_t uid;
    };

    std::vector<const Stroke*> order;
    for (const auto& s : strokes) order.push_back(&s);
    std::sort(order.begin(), order.end(),
              [](const Stroke* x, const Stroke* y) { return x->draw_index < y->draw_index; });

    std::vector<Work> work;
    std::size_t next_uid = 0;
    for (const Stroke* s : order) {
        Work w;
        if (kind == ElementKind::Point) {
            validate(*s);
            const Stroke one[] = {*s};
            w.samples = measurement_samples(one, eps);
            w.element = make_point({*s}, w.samples, eps);
        } else {
            w.element = fit_line(*s, eps);
        }
        w.box = strokes_box(w.element.strokes);
        w.uid = next_uid++;
        work.push_back(std::move(w));
    }

    // Pairs that already failed stay failed: merging only ever creates new
    // elements, it never changes existing ones. Each merge creates one
    // element, so uids stay below 2n.
    const std::size_t cap = 2 * work.size() + 1;
    const bool dense = cap <= 4096;
    std::vector<char> failed_dense(dense ? cap * cap : 0, 0);
    std::unordered_set<std::size_t> failed_sparse;
    auto is_failed = [&](std::size_t a, std::size_t b) {
        return dense ? failed_dense[a * cap + b] != 0 : failed_sparse.count(a * cap + b) != 0;
    };
    auto mark_failed = [&](std::size_t a, std::size_t b) {
        if (dense) failed_dense[a * cap + b] = 1;
        else failed_sparse.insert(a * cap + b);
    };

    bool merged_any = true;
    while (merged_any) {
        merged_any = false;
        for (std::size_t i = 0; i < work.size() && !merged_any; ++i) {
            if (!work[i].element.valid) continue;
            for (std::size_t j = i + 1; j < work.size(); ++j) {
                if (!work[j].element.valid) continue;
                const std::size_t ui = work[i].uid;
                const std::size_t uj = work[j].uid;
                if (is_failed(ui, uj)) continue;
                // Two sets at distance D cannot have a joint spread below D.
                if (box_gap(work[i].box, work[j].box) > eps) {
                    mark_failed(ui, uj);
                    continue;
                }
                std::optional<Element> merged;
                std::vector<Vec2> samples;
                if (kind == ElementKind::Point) {
                    samples = work[i].samples;
                    samples.insert(samples.end(), work[j].samples.begin(), work[j].samples.end());
                    Element m = make_point(concat(work[i].element.strokes, work[j].element.strokes), samples, eps);
                    if (m.valid) merged = std::move(m);
                } else {
                    merged = try_merge(work[i].element, work[j].element, eps);
                }
                if (!merged) {
                    mark_failed(ui, uj);
                    continue;
                }
                Work w;
                w.element = std::move(*merged);
                w.samples = std::move(samples);
                w.box = strokes_box(w.element.strokes);
                w.uid = next_uid++;
                work[i] = std::move(w);
                work.erase(work.begin() + static_cast<std::ptrdiff_t>(j));
                merged_any = true;
                break;
            }
        }
    }

    std::vector<Element> out;
    out.reserve(work.size());
    for (auto& w : work) out.push_back(std::move(w.element));
    std::stable_sort(out.begin(), out.end(),
                     [](const Element& x, const Element& y) { return x.min_draw_index < y.min_draw_index; });
    return out;
}

ElementProperties element_properties(const Element& e, const ReferenceFrame& frame) {
    ElementProperties p;
    p.kind = e.kind;
    if (e.kind == ElementKind::Point) {
        p.size = e.size;
    } else {
        p.length = e.length;
        p.width = e.width;
        p.orientation = signed_acute_angle(frame.main_direction(), e.axis.p1 - e.axis.p0);
    }
    if (frame.kind == FrameKind::OneD) p.perp_offset = cross(frame.direction, e.center - frame.origin);
    return p;
}

}  // namespace strokesyn
