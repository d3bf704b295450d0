#include "strokesyn/pattern_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "strokesyn/error.hpp"

namespace strokesyn {

ReferenceFrame ReferenceFrame::one_d(Vec2 origin, Vec2 direction, double length) {
    ReferenceFrame f;
    f.kind = FrameKind::OneD;
    f.origin = origin;
    f.direction = normalized(direction);
    f.length = length;
    return f;
}

ReferenceFrame ReferenceFrame::two_d(Polygon region) {
    ReferenceFrame f;
    f.kind = FrameKind::TwoD;
    f.region = std::move(region);
    return f;
}

ReferenceFrame fit_one_d_frame(std::span<const Stroke> strokes) {
    Vec2 mean{};
    std::size_t n = 0;
    for (const auto& s : strokes)
        for (Vec2 v : s.vertices) {
            mean += v;
            ++n;
        }
    if (n == 0) throw Error(ErrorCode::InvalidGeometry, "cannot fit a frame to no vertices");
    mean = mean / static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& s : strokes)
        for (Vec2 v : s.vertices) {
            const Vec2 d = v - mean;
            sxx += d.x * d.x;
            syy += d.y * d.y;
            sxy += d.x * d.y;
        }
    Vec2 dir = unit_from_angle(0.5 * std::atan2(2.0 * sxy, sxx - syy));
    if (dir.x < 0.0 || (dir.x == 0.0 && dir.y < 0.0)) dir = -dir;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : strokes)
        for (Vec2 v : s.vertices) {
            lo = std::min(lo, dot(v - mean, dir));
            hi = std::max(hi, dot(v - mean, dir));
        }
    if (!(hi > lo)) throw Error(ErrorCode::InvalidGeometry, "strokes have no extent to fit a 1D frame");
    return ReferenceFrame::one_d(mean + dir * lo, dir, hi - lo);
}

AnalysisParams resolve_frame(AnalysisParams params, std::span<const Stroke> strokes) {
    if (params.frame.kind == FrameKind::OneD && params.frame.length == 0.0) params.frame = fit_one_d_frame(strokes);
    return params;
}

void validate(const Stroke& s) {
    if (s.vertices.empty())
        throw Error(ErrorCode::InvalidGeometry, "stroke " + std::to_string(s.draw_index) + " has no vertices");
    for (Vec2 v : s.vertices)
        if (!v.finite())
            throw Error(ErrorCode::InvalidGeometry,
                        "stroke " + std::to_string(s.draw_index) + " has a non-finite vertex");
    if (!(s.width > 0.0) || !std::isfinite(s.width))
        throw Error(ErrorCode::InvalidGeometry, "stroke width must be positive");
    if (!(s.opacity >= 0.0 && s.opacity <= 1.0))
        throw Error(ErrorCode::InvalidGeometry, "stroke opacity must lie in [0, 1]");
}

void validate(const ReferenceFrame& f) {
    if (f.kind == FrameKind::OneD) {
        if (!f.origin.finite() || !f.direction.finite())
            throw Error(ErrorCode::InvalidGeometry, "1D frame has non-finite axis");
        if (std::abs(f.direction.norm() - 1.0) > 1e-9)
            throw Error(ErrorCode::InvalidGeometry, "1D frame direction must be unit length");
        if (!(f.length > 0.0))
            throw Error(ErrorCode::InvalidGeometry, "1D frame length must be positive");
    } else if (!f.region.empty() && !polygon_is_simple(f.region)) {
        throw Error(ErrorCode::InvalidGeometry, "reference region must be a simple polygon");
    }
}

void validate(const AnalysisParams& p) {
    if (!(p.epsilon > 0.0) || !std::isfinite(p.epsilon))
        throw Error(ErrorCode::Precondition, "epsilon must be positive");
    validate(p.frame);
}

Stroke resample_stroke(const Stroke& s, double step) {
    if (!(step > 0.0)) throw Error(ErrorCode::Precondition, "resample step must be positive");
    validate(s);
    Stroke out = s;
    if (s.vertices.size() == 1) return out;
    out.vertices.clear();
    out.vertices.push_back(s.vertices.front());
    for (std::size_t i = 0; i + 1 < s.vertices.size(); ++i) {
        const Vec2 a = s.vertices[i];
        const Vec2 b = s.vertices[i + 1];
        const double len = distance(a, b);
        if (len == 0.0) continue;
        const auto pieces = static_cast<std::size_t>(std::ceil(len / step - 1e-12));
        for (std::size_t k = 1; k < pieces; ++k)
            out.vertices.push_back(a + (b - a) * (static_cast<double>(k) / static_cast<double>(pieces)));
        out.vertices.push_back(b);
    }
    return out;
}

double measurement_step(const Stroke& s, double epsilon) {
    double shortest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < s.vertices.size(); ++i) {
        const double len = distance(s.vertices[i], s.vertices[i + 1]);
        if (len > 0.0) shortest = std::min(shortest, len);
    }
    return std::max(std::min(epsilon / 10.0, shortest) / 2.0, 1e-3);
}

double hausdorff_directed(std::span<const Vec2> X, std::span<const Vec2> Y) {
    if (X.empty() || Y.empty()) throw Error(ErrorCode::Precondition, "Hausdorff distance of an empty set");
    double worst = 0.0;
    for (Vec2 x : X) {
        double best = std::numeric_limits<double>::infinity();
        for (Vec2 y : Y) best = std::min(best, (x - y).squared_norm());
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

double hausdorff_directed(std::span<const Vec2> X, const LineSeg& Y) {
    if (X.empty()) throw Error(ErrorCode::Precondition, "Hausdorff distance of an empty set");
    double worst = 0.0;
    for (Vec2 x : X) worst = std::max(worst, point_segment_distance(x, Y));
    return worst;
}

double hausdorff_directed(const LineSeg& X, std::span<const std::vector<Vec2>> Y, double abs_tol) {
    std::vector<LineSeg> pieces;
    for (const auto& poly : Y) {
        if (poly.size() == 1) pieces.push_back({poly[0], poly[0]});
        for (std::size_t i = 0; i + 1 < poly.size(); ++i) pieces.push_back({poly[i], poly[i + 1]});
    }
    if (pieces.empty()) throw Error(ErrorCode::Precondition, "Hausdorff distance of an empty set");

    const double length = X.length();
    auto at = [&](double t) { return length == 0.0 ? X.p0 : X.p0 + (X.p1 - X.p0) * (t / length); };
    auto f = [&](Vec2 p) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& seg : pieces) best = std::min(best, point_segment_distance(p, seg));
        return best;
    };
    // Distance to a single segment is convex along X, so on [a, b] the lower
    // envelope is bounded by min over pieces of the larger endpoint value.
    auto upper_bound = [&](Vec2 a, Vec2 b) {
        double ub = std::numeric_limits<double>::infinity();
        for (const auto& seg : pieces)
            ub = std::min(ub, std::max(point_segment_distance(a, seg), point_segment_distance(b, seg)));
        return ub;
    };

    double best = std::max(f(X.p0), f(X.p1));
    if (length == 0.0) return best;

    struct Interval {
        double ub, a, b;
        bool operator<(const Interval& o) const { return ub < o.ub; }
    };
    std::priority_queue<Interval> queue;
    queue.push({upper_bound(X.p0, X.p1), 0.0, length});
    while (!queue.empty()) {
        const Interval iv = queue.top();
        queue.pop();
        if (iv.ub <= best + abs_tol) break;
        const double mid = 0.5 * (iv.a + iv.b);
        const Vec2 pm = at(mid);
        best = std::max(best, f(pm));
        if (iv.b - iv.a <= abs_tol) continue;
        const double left = upper_bound(at(iv.a), pm);
        const double right = upper_bound(pm, at(iv.b));
        if (left > best + abs_tol) queue.push({left, iv.a, mid});
        if (right > best + abs_tol) queue.push({right, mid, iv.b});
    }
    return best;
}

CentroidSpread centroid_and_spread(std::span<const Vec2> samples) {
    if (samples.empty()) throw Error(ErrorCode::Precondition, "centroid of an empty set");
    Vec2 c{};
    for (Vec2 p : samples) c += p;
    c = c / static_cast<double>(samples.size());
    double r2 = 0.0;
    for (Vec2 p : samples) r2 = std::max(r2, (p - c).squared_norm());
    return {c, 2.0 * std::sqrt(r2)};
}

CentroidSpread centroid_and_spread(const Stroke& s, double epsilon) {
    const Stroke r = resample_stroke(s, measurement_step(s, epsilon));
    return centroid_and_spread(r.vertices);
}

LineSeg endpoint_virtual_line(const Stroke& s) {
    validate(s);
    if (s.vertices.size() < 2)
        throw Error(ErrorCode::DegenerateLine, "virtual line needs at least two vertices");
    const LineSeg seg{s.vertices.front(), s.vertices.back()};
    if (seg.degenerate()) throw Error(ErrorCode::DegenerateLine, "stroke endpoints coincide");
    return seg;
}

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidGeometry: return "invalid-geometry";
        case ErrorCode::Precondition: return "precondition";
        case ErrorCode::DegenerateLine: return "degenerate-line";
        case ErrorCode::InsufficientElements: return "insufficient-elements";
        case ErrorCode::InsufficientPoints: return "insufficient-points";
        case ErrorCode::DegenerateDistribution: return "degenerate-distribution";
        case ErrorCode::UndefinedOverlap: return "undefined-overlap";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::UnsupportedVersion: return "unsupported-version";
    }
    return "unknown";
}

}  // namespace strokesyn
