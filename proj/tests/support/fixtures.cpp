#include "fixtures.hpp"

#include <cmath>

namespace strokesyn::testing {

namespace {

constexpr double kDeg = 3.14159265358979323846 / 180.0;

Vec2 dir(double degrees) { return {std::cos(degrees * kDeg), std::sin(degrees * kDeg)}; }

struct Builder {
    Fixture f;
    TestRng rng;
    std::uint64_t next = 0;

    Builder(std::string name, PatternType type, double eps, std::uint64_t seed) : rng(seed) {
        f.name = std::move(name);
        f.params.pattern_type = type;
        f.params.epsilon = eps;
    }

    void add(std::vector<Vec2> pts, double width = 1.0) {
        Stroke s;
        s.vertices = std::move(pts);
        s.width = width;
        s.draw_index = next++;
        f.strokes.push_back(std::move(s));
    }

    // A hand-drawn straight stroke: `n` vertices with sideways wobble.
    void sketched(Vec2 a, Vec2 b, double wobble, int n = 5) {
        std::vector<Vec2> pts;
        const Vec2 side = perp(normalized(b - a));
        for (int k = 0; k < n; ++k) {
            const double t = static_cast<double>(k) / (n - 1);
            const double w = (k == 0 || k == n - 1) ? 0.0 : rng.uniform(-wobble, wobble);
            pts.push_back(a + (b - a) * t + side * w);
        }
        add(std::move(pts));
    }

    void circle(Vec2 c, double r, int n = 12) {
        std::vector<Vec2> pts;
        const double phase = rng.uniform(0.0, 360.0);
        for (int k = 0; k <= n; ++k) pts.push_back(c + dir(phase + 360.0 * k / n) * r);
        add(std::move(pts));
    }

    double jitter(double j) { return rng.uniform(-j, j); }

    // 2D target: the stroke bounds grown about their center.
    Fixture done_2d(double grow = 1.6) {
        f.params.frame = ReferenceFrame::two_d();
        BoundingBox box;
        for (const auto& s : f.strokes)
            for (Vec2 v : s.vertices) box.extend(v);
        const Vec2 c = (box.lo + box.hi) * 0.5;
        const Vec2 h = (box.hi - box.lo) * (0.5 * grow);
        f.target = {c - h, {c.x + h.x, c.y - h.y}, c + h, {c.x - h.x, c.y + h.y}};
        return std::move(f);
    }

    Fixture done_1d(Vec2 origin, Vec2 direction, double length) {
        f.params.frame = ReferenceFrame::one_d(origin, direction, length);
        const Vec2 d = normalized(direction);
        f.target = {origin, origin + d * (2.0 * length)};
        return std::move(f);
    }
};

Fixture sketched_hatching(std::string name, int rows, int cols, double spacing, double length, double angle,
                          double eps, std::uint64_t seed) {
    Builder b(std::move(name), PatternType::Hatching, eps, seed);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const Vec2 p{c * spacing + b.jitter(0.15 * spacing), r * spacing + b.jitter(0.15 * spacing)};
            const Vec2 d = dir(angle + b.jitter(6.0)) * (0.5 * length * (1.0 + b.jitter(0.15)));
            b.sketched(p - d, p + d, 0.2 * eps);
        }
    return b.done_2d();
}

Fixture dashed_lines(std::string name, int rows, int dashes, double dash, double gap, double row_spacing, double eps,
                     std::uint64_t seed) {
    Builder b(std::move(name), PatternType::Hatching, eps, seed);
    for (int r = 0; r < rows; ++r) {
        const double y = r * row_spacing + b.jitter(0.1 * row_spacing);
        const double slope = b.jitter(0.01);
        double x = b.jitter(dash);
        for (int k = 0; k < dashes; ++k) {
            b.sketched({x, y + slope * x}, {x + dash, y + slope * (x + dash)}, 0.05 * eps, 3);
            x += dash + gap;
        }
    }
    return b.done_2d();
}

Fixture crosses(std::string name, int rows, int cols, double spacing, double size, double eps, std::uint64_t seed) {
    Builder b(std::move(name), PatternType::Hatching, eps, seed);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const Vec2 p{c * spacing + b.jitter(0.1 * spacing), r * spacing + b.jitter(0.1 * spacing)};
            const double a = 45.0 + b.jitter(8.0);
            const Vec2 d1 = dir(a) * (0.5 * size);
            const Vec2 d2 = dir(a + 90.0 + b.jitter(8.0)) * (0.5 * size);
            b.sketched(p - d1, p + d1, 0.15 * eps);
            b.sketched(p - d2, p + d2, 0.15 * eps);
        }
    return b.done_2d();
}

// Each line is drawn as several overlapping short passes.
Fixture multi_pass_lines(std::string name, int rows, int cols, double spacing, double length, double angle,
                         double eps, std::uint64_t seed) {
    Builder b(std::move(name), PatternType::Hatching, eps, seed);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const Vec2 p{c * spacing + b.jitter(0.1 * spacing), r * spacing + b.jitter(0.1 * spacing)};
            const Vec2 d = dir(angle + b.jitter(4.0));
            const Vec2 side = perp(d);
            const int passes = 2 + static_cast<int>(b.rng.index(2));
            for (int k = 0; k < passes; ++k) {
                const double t0 = -0.5 * length + k * length / (passes + 1.0) + b.jitter(0.05 * length);
                const double t1 = t0 + 2.0 * length / (passes + 1.0);
                const Vec2 off = side * b.jitter(0.1 * eps);
                b.sketched(p + d * t0 + off, p + d * std::min(t1, 0.5 * length) + off, 0.05 * eps, 4);
            }
        }
    return b.done_2d();
}

Fixture border_ticks(std::string name, int count, double spacing, double length, double tilt, double eps,
                     std::uint64_t seed) {
    Builder b(std::move(name), PatternType::Hatching, eps, seed);
    for (int k = 0; k < count; ++k) {
        const Vec2 p{k * spacing + b.jitter(0.15 * spacing), b.jitter(0.1 * length)};
        const Vec2 d = dir(90.0 + tilt + b.jitter(5.0)) * (0.5 * length * (1.0 + b.jitter(0.1)));
        b.sketched(p - d, p + d, 0.15 * eps);
    }
    return b.done_1d({-0.5 * spacing, 0.0}, {1.0, 0.0}, count * spacing);
}

Fixture dashed_border(std::string name, int dashes, double dash, double gap, double eps, std::uint64_t seed) {
    Builder b(std::move(name), PatternType::Hatching, eps, seed);
    double x = 0.0;
    for (int k = 0; k < dashes; ++k) {
        const double len = dash * (1.0 + b.jitter(0.2));
        const double y = b.jitter(0.1 * eps);
        b.sketched({x, y}, {x + len, y + b.jitter(0.1 * eps)}, 0.05 * eps, 3);
        x += len + gap * (1.0 + b.jitter(0.2));
    }
    return b.done_1d({-0.5 * gap, 0.0}, {1.0, 0.0}, x);
}

Fixture small_circles(std::string name, int rows, int cols, double spacing, double radius, double eps,
                      std::uint64_t seed) {
    Builder b(std::move(name), PatternType::Stippling, eps, seed);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const Vec2 p{c * spacing + b.jitter(0.25 * spacing), r * spacing + b.jitter(0.25 * spacing)};
            b.circle(p, radius * (1.0 + b.jitter(0.3)));
        }
    return b.done_2d();
}

Fixture taps(std::string name, int rows, int cols, double spacing, double eps, std::uint64_t seed) {
    Builder b(std::move(name), PatternType::Stippling, eps, seed);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            b.add({{c * spacing + b.jitter(0.3 * spacing), r * spacing + b.jitter(0.3 * spacing)}},
                  1.0 + b.jitter(0.3));
    return b.done_2d();
}

// Dots made of two or three nearby taps or tiny scribbles.
Fixture clustered_dots(std::string name, int rows, int cols, double spacing, double eps, std::uint64_t seed) {
    Builder b(std::move(name), PatternType::Stippling, eps, seed);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const Vec2 p{c * spacing + b.jitter(0.2 * spacing), r * spacing + b.jitter(0.2 * spacing)};
            const int n = 2 + static_cast<int>(b.rng.index(2));
            for (int k = 0; k < n; ++k) {
                const Vec2 q = p + Vec2{b.jitter(0.2 * eps), b.jitter(0.2 * eps)};
                if (k == 0) b.add({q});
                else b.add({q, q + Vec2{b.jitter(0.15 * eps), b.jitter(0.15 * eps)}});
            }
        }
    return b.done_2d();
}

Fixture circle_row(std::string name, int count, double spacing, double radius, double eps, std::uint64_t seed) {
    Builder b(std::move(name), PatternType::Stippling, eps, seed);
    for (int k = 0; k < count; ++k)
        b.circle({k * spacing + b.jitter(0.2 * spacing), b.jitter(0.3 * spacing)}, radius * (1.0 + b.jitter(0.2)));
    return b.done_1d({-0.5 * spacing, 0.0}, {1.0, 0.0}, count * spacing);
}

std::vector<Fixture> build() {
    std::vector<Fixture> v;
    // Sketched hatching.
    v.push_back(sketched_hatching("hatch_30deg", 4, 6, 10.0, 8.0, 30.0, 2.0, 101));
    v.push_back(sketched_hatching("hatch_60deg_dense", 6, 8, 6.0, 5.0, 60.0, 1.5, 102));
    v.push_back(sketched_hatching("hatch_80deg", 3, 10, 5.0, 12.0, 80.0, 2.0, 103));
    v.push_back(sketched_hatching("hatch_minus20", 5, 5, 12.0, 10.0, -20.0, 2.5, 104));
    v.push_back(sketched_hatching("hatch_horizontal", 8, 3, 4.0, 14.0, 2.0, 1.5, 105));
    // Dashed lines: gaps below epsilon join the dashes.
    v.push_back(dashed_lines("dashes_joined", 5, 4, 6.0, 1.0, 8.0, 2.0, 201));
    v.push_back(dashed_lines("dashes_separate", 4, 5, 5.0, 4.0, 9.0, 2.0, 202));
    v.push_back(dashed_lines("dashes_long_rows", 6, 3, 10.0, 1.5, 7.0, 2.5, 203));
    // Crosses.
    v.push_back(crosses("crosses_grid", 4, 5, 12.0, 8.0, 1.5, 301));
    v.push_back(crosses("crosses_tight", 5, 5, 9.0, 6.0, 1.0, 302));
    v.push_back(crosses("crosses_sparse", 3, 4, 20.0, 10.0, 2.0, 303));
    // Lines drawn in several passes.
    v.push_back(multi_pass_lines("passes_45deg", 4, 5, 12.0, 10.0, 45.0, 2.0, 401));
    v.push_back(multi_pass_lines("passes_vertical", 3, 8, 7.0, 12.0, 88.0, 2.0, 402));
    v.push_back(multi_pass_lines("passes_shallow", 6, 3, 8.0, 16.0, 12.0, 2.5, 403));
    v.push_back(multi_pass_lines("passes_steep", 4, 6, 9.0, 9.0, 70.0, 1.8, 404));
    // 1D hatching along a border.
    v.push_back(border_ticks("ticks_upright", 16, 4.0, 10.0, 0.0, 1.5, 501));
    v.push_back(border_ticks("ticks_leaning", 12, 5.0, 8.0, 25.0, 1.5, 502));
    v.push_back(border_ticks("ticks_fine", 24, 2.5, 6.0, -10.0, 1.0, 503));
    v.push_back(border_ticks("ticks_wide", 10, 8.0, 14.0, 5.0, 2.5, 504));
    v.push_back(dashed_border("dashed_border", 14, 6.0, 3.0, 1.5, 505));
    // Stippling with small circles.
    v.push_back(small_circles("circles_grid", 5, 6, 8.0, 1.0, 3.0, 601));
    v.push_back(small_circles("circles_dense", 7, 7, 5.0, 0.8, 2.5, 602));
    v.push_back(small_circles("circles_large", 4, 5, 12.0, 2.0, 6.0, 603));
    v.push_back(small_circles("circles_mixed", 6, 4, 9.0, 1.4, 4.0, 604));
    // Taps and multi-tap dots.
    v.push_back(taps("taps_grid", 6, 6, 6.0, 2.0, 701));
    v.push_back(taps("taps_sparse", 4, 7, 10.0, 2.0, 702));
    v.push_back(clustered_dots("dots_clustered", 5, 5, 8.0, 2.0, 703));
    v.push_back(clustered_dots("dots_clustered_dense", 6, 6, 6.0, 1.5, 704));
    // 1D stippling.
    v.push_back(circle_row("circle_row", 14, 6.0, 1.0, 3.0, 801));
    v.push_back(circle_row("circle_row_fine", 20, 4.0, 0.6, 2.0, 802));
    return v;
}

}  // namespace

const std::vector<Fixture>& gesture_fixtures() {
    static const std::vector<Fixture> fixtures = build();
    return fixtures;
}

}  // namespace strokesyn::testing
