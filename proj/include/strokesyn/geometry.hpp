#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace strokesyn {

/// Absolute tolerance used by exact-geometry predicates. One global knob.
double tolerance();
void set_tolerance(double tol);

constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    constexpr bool operator==(const Vec2&) const = default;

    double norm() const { return std::hypot(x, y); }
    constexpr double squared_norm() const { return x * x + y * y; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
/// Counter-clockwise quarter turn.
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

Vec2 normalized(Vec2 v);
Vec2 rotated(Vec2 v, double angle);
Vec2 unit_from_angle(double angle);

/// Reduce an undirected-line angle into (-pi/2, pi/2].
double wrap_half_turn(double angle);

/// Signed acute angle from line direction `from` to line direction `to`,
/// treating both as undirected. Result in (-pi/2, pi/2].
double signed_acute_angle(Vec2 from, Vec2 to);

struct LineSeg {
    Vec2 p0;
    Vec2 p1;

    bool operator==(const LineSeg&) const = default;

    double length() const { return distance(p0, p1); }
    Vec2 midpoint() const { return (p0 + p1) * 0.5; }
    Vec2 direction() const { return normalized(p1 - p0); }
    bool degenerate() const { return (p1 - p0).norm() <= tolerance(); }
};

Vec2 closest_point_on_segment(Vec2 p, const LineSeg& seg);
double point_segment_distance(Vec2 p, const LineSeg& seg);
/// Euclidean distance from `p` to the nearest point of a polyline.
double point_polyline_distance(Vec2 p, std::span<const Vec2> polyline);

bool segments_intersect(const LineSeg& a, const LineSeg& b);

using Polygon = std::vector<Vec2>;

double signed_area(std::span<const Vec2> poly);
double polygon_area(std::span<const Vec2> poly);
/// Area centroid. Falls back to the vertex mean for zero-area input.
Vec2 polygon_centroid(std::span<const Vec2> poly);
/// Even-odd containment; boundary points within tolerance count as inside.
bool polygon_contains(std::span<const Vec2> poly, Vec2 p);
bool polygon_is_simple(std::span<const Vec2> poly);
Vec2 closest_point_on_boundary(std::span<const Vec2> poly, Vec2 p);

/// Keep the part of `poly` where dot(p - origin, normal) <= 0.
Polygon clip_half_plane(const Polygon& poly, Vec2 origin, Vec2 normal);

struct BoundingBox {
    Vec2 lo{INFINITY, INFINITY};
    Vec2 hi{-INFINITY, -INFINITY};

    void extend(Vec2 p);
    bool empty() const { return lo.x > hi.x; }
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double area() const { return empty() ? 0.0 : width() * height(); }
};

BoundingBox bounding_box(std::span<const Vec2> pts);

}  // namespace strokesyn
