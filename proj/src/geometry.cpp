#include "strokesyn/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

namespace strokesyn {

namespace {
std::atomic<double> g_tolerance{1e-9};
}

double tolerance() { return g_tolerance.load(std::memory_order_relaxed); }
void set_tolerance(double tol) { g_tolerance.store(tol, std::memory_order_relaxed); }

Vec2 normalized(Vec2 v) {
    const double n = v.norm();
    if (n == 0.0) return {0.0, 0.0};
    return v / n;
}

Vec2 rotated(Vec2 v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 unit_from_angle(double angle) { return {std::cos(angle), std::sin(angle)}; }

double wrap_half_turn(double angle) {
    double a = std::fmod(angle, kPi);
    if (a <= -kPi / 2) a += kPi;
    if (a > kPi / 2) a -= kPi;
    return a;
}

double signed_acute_angle(Vec2 from, Vec2 to) {
    return wrap_half_turn(std::atan2(cross(from, to), dot(from, to)));
}

Vec2 closest_point_on_segment(Vec2 p, const LineSeg& seg) {
    const Vec2 d = seg.p1 - seg.p0;
    const double len2 = d.squared_norm();
    if (len2 == 0.0) return seg.p0;
    const double t = std::clamp(dot(p - seg.p0, d) / len2, 0.0, 1.0);
    return seg.p0 + d * t;
}

double point_segment_distance(Vec2 p, const LineSeg& seg) {
    return distance(p, closest_point_on_segment(p, seg));
}

double point_polyline_distance(Vec2 p, std::span<const Vec2> polyline) {
    if (polyline.size() == 1) return distance(p, polyline[0]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
        best = std::min(best, point_segment_distance(p, {polyline[i], polyline[i + 1]}));
    return best;
}

namespace {
int orientation_sign(Vec2 a, Vec2 b, Vec2 c) {
    const double v = cross(b - a, c - a);
    const double scale = std::max({(b - a).norm() * (c - a).norm(), 1.0});
    if (v > tolerance() * scale) return 1;
    if (v < -tolerance() * scale) return -1;
    return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) - tolerance() <= p.x && p.x <= std::max(a.x, b.x) + tolerance() &&
           std::min(a.y, b.y) - tolerance() <= p.y && p.y <= std::max(a.y, b.y) + tolerance();
}
}  // namespace

bool segments_intersect(const LineSeg& a, const LineSeg& b) {
    const int o1 = orientation_sign(a.p0, a.p1, b.p0);
    const int o2 = orientation_sign(a.p0, a.p1, b.p1);
    const int o3 = orientation_sign(b.p0, b.p1, a.p0);
    const int o4 = orientation_sign(b.p0, b.p1, a.p1);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a.p0, a.p1, b.p0)) return true;
    if (o2 == 0 && on_segment(a.p0, a.p1, b.p1)) return true;
    if (o3 == 0 && on_segment(b.p0, b.p1, a.p0)) return true;
    if (o4 == 0 && on_segment(b.p0, b.p1, a.p1)) return true;
    return false;
}

double signed_area(std::span<const Vec2> poly) {
    double a = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
    return 0.5 * a;
}

double polygon_area(std::span<const Vec2> poly) { return std::abs(signed_area(poly)); }

Vec2 polygon_centroid(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    if (n == 0) return {};
    // Shift to the first vertex to limit cancellation for far-off polygons.
    const Vec2 o = poly[0];
    double a = 0.0;
    Vec2 c{};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = poly[i] - o;
        const Vec2 q = poly[(i + 1) % n] - o;
        const double w = cross(p, q);
        a += w;
        c += (p + q) * w;
    }
    if (std::abs(a) <= std::numeric_limits<double>::min()) {
        Vec2 m{};
        for (Vec2 p : poly) m += p;
        return m / static_cast<double>(n);
    }
    return o + c / (3.0 * a);
}

bool polygon_contains(std::span<const Vec2> poly, Vec2 p) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[j];
        if (point_segment_distance(p, {a, b}) <= tolerance()) return true;
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

bool polygon_is_simple(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const LineSeg e{poly[i], poly[(i + 1) % n]};
        if (e.degenerate()) return false;
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(e, {poly[j], poly[(j + 1) % n]})) return false;
        }
    }
    return true;
}

Vec2 closest_point_on_boundary(std::span<const Vec2> poly, Vec2 p) {
    Vec2 best = poly.empty() ? p : poly[0];
    double best_d = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 q = closest_point_on_segment(p, {poly[i], poly[(i + 1) % n]});
        const double d = distance(p, q);
        if (d < best_d) {
            best_d = d;
            best = q;
        }
    }
    return best;
}

Polygon clip_half_plane(const Polygon& poly, Vec2 origin, Vec2 normal) {
    Polygon out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    out.reserve(n + 2);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        const double da = dot(a - origin, normal);
        const double db = dot(b - origin, normal);
        if (da <= 0.0) out.push_back(a);
        if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
            const double t = da / (da - db);
            out.push_back(a + (b - a) * t);
        }
    }
    return out;
}

void BoundingBox::extend(Vec2 p) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
}

BoundingBox bounding_box(std::span<const Vec2> pts) {
    BoundingBox b;
    for (Vec2 p : pts) b.extend(p);
    return b;
}

}  // namespace strokesyn
