#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "strokesyn/error.hpp"
#include "strokesyn/pattern_model.hpp"

using namespace strokesyn;
using namespace strokesyn::testing;

namespace {

Stroke stroke(std::vector<Vec2> v) {
    Stroke s;
    s.vertices = std::move(v);
    return s;
}

double arc_length(const std::vector<Vec2>& v) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) total += distance(v[i], v[i + 1]);
    return total;
}

bool on_polyline(Vec2 p, const std::vector<Vec2>& poly) {
    for (std::size_t i = 0; i + 1 < poly.size(); ++i)
        if (oracle_segment_distance(p, poly[i], poly[i + 1]) < 1e-9) return true;
    return false;
}

}  // namespace

TEST(Geometry, WrapHalfTurn) {
    EXPECT_NEAR(wrap_half_turn(kPi), 0.0, 1e-12);
    EXPECT_NEAR(wrap_half_turn(-kPi / 2), kPi / 2, 1e-12);
    EXPECT_NEAR(wrap_half_turn(3 * kPi / 4), -kPi / 4, 1e-12);
}

TEST(Geometry, SignedAcuteAngleIgnoresDirection) {
    EXPECT_NEAR(signed_acute_angle({1, 0}, {0, 1}), kPi / 2, 1e-12);
    EXPECT_NEAR(signed_acute_angle({1, 0}, {1, 1}), kPi / 4, 1e-12);
    EXPECT_NEAR(signed_acute_angle({1, 0}, {-1, -1}), kPi / 4, 1e-12);
    EXPECT_NEAR(signed_acute_angle({1, 0}, {1, -1}), -kPi / 4, 1e-12);
}

TEST(Geometry, PointSegmentDistanceMatchesOracle) {
    TestRng rng(7);
    for (int k = 0; k < 1000; ++k) {
        const Vec2 a{rng.uniform(-5, 5), rng.uniform(-5, 5)}, b{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const Vec2 p{rng.uniform(-8, 8), rng.uniform(-8, 8)};
        EXPECT_NEAR(point_segment_distance(p, {a, b}), oracle_segment_distance(p, a, b), 1e-12);
    }
}

TEST(Geometry, PolygonBasics) {
    const Polygon sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    EXPECT_DOUBLE_EQ(polygon_area(sq), 4.0);
    EXPECT_EQ(polygon_centroid(sq), Vec2(1, 1));
    EXPECT_TRUE(polygon_contains(sq, {1, 1}));
    EXPECT_TRUE(polygon_contains(sq, {2, 1}));
    EXPECT_FALSE(polygon_contains(sq, {3, 1}));
    EXPECT_TRUE(polygon_is_simple(sq));
    EXPECT_FALSE(polygon_is_simple(Polygon{{0, 0}, {2, 2}, {2, 0}, {0, 2}}));
    const Polygon half = clip_half_plane(sq, {1, 0}, {1, 0});
    EXPECT_DOUBLE_EQ(polygon_area(half), 2.0);
}

TEST(Resample, SingleVertexUnchanged) {
    const Stroke s = stroke({{3, 4}});
    EXPECT_EQ(resample_stroke(s, 1.0), s);
}

TEST(Resample, UniformSubdivision) {
    const auto r = resample_stroke(stroke({{0, 0}, {2, 0}}), 1.0);
    ASSERT_EQ(r.vertices.size(), 3u);
    EXPECT_EQ(r.vertices[1], Vec2(1, 0));
    EXPECT_EQ(r.vertices[2], Vec2(2, 0));
}

TEST(Resample, CornerPolylineMatchesArcLengthAccumulation) {
    const std::vector<Vec2> poly{{0, 0}, {4, 0}, {4, 3}};
    const auto r = resample_stroke(stroke(poly), 0.5).vertices;
    // Accumulate the expected intervals segment by segment: 4 / 0.5 + 3 / 0.5.
    std::size_t intervals = 0;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i)
        intervals += static_cast<std::size_t>(std::ceil(distance(poly[i], poly[i + 1]) / 0.5));
    ASSERT_EQ(r.size(), intervals + 1);
    EXPECT_EQ(r.size(), 15u);
    EXPECT_EQ(r.front(), Vec2(0, 0));
    EXPECT_EQ(r.back(), Vec2(4, 3));
    EXPECT_NE(std::find(r.begin(), r.end(), Vec2(4, 0)), r.end());
    for (std::size_t i = 0; i + 1 < r.size(); ++i) EXPECT_LE(distance(r[i], r[i + 1]), 0.5 + 1e-12);
    EXPECT_NEAR(arc_length(r), 7.0, 7e-9);
}

TEST(Resample, PropertiesOnRandomStrokes) {
    TestRng rng(11);
    for (int k = 0; k < 200; ++k) {
        std::vector<Vec2> v;
        const int n = 2 + static_cast<int>(rng.index(6));
        for (int i = 0; i < n; ++i) v.push_back({rng.uniform(-10, 10), rng.uniform(-10, 10)});
        const double step = rng.uniform(0.05, 2.0);
        const auto r = resample_stroke(stroke(v), step).vertices;
        EXPECT_EQ(r.front(), v.front());
        EXPECT_EQ(r.back(), v.back());
        EXPECT_NEAR(arc_length(r), arc_length(v), 1e-9 * arc_length(v));
        for (std::size_t i = 0; i + 1 < r.size(); ++i) EXPECT_LE(distance(r[i], r[i + 1]), step * (1 + 1e-9));
        for (Vec2 p : r) EXPECT_TRUE(on_polyline(p, v));
    }
}

TEST(Resample, RejectsNonFinite) {
    try {
        resample_stroke(stroke({{0, 0}, {NAN, 1}}), 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidGeometry);
    }
}

TEST(MeasurementStep, FollowsEpsilonAndShortestSegment) {
    EXPECT_DOUBLE_EQ(measurement_step(stroke({{0, 0}, {10, 0}}), 4.0), 0.2);
    EXPECT_DOUBLE_EQ(measurement_step(stroke({{0, 0}, {0.1, 0}, {10, 0}}), 4.0), 0.05);
    EXPECT_DOUBLE_EQ(measurement_step(stroke({{0, 0}, {10, 0}}), 1e-5), 1e-3);
}

TEST(Hausdorff, TrivialCases) {
    const std::vector<Vec2> X{{0, 0}, {1, 2}, {3, 1}};
    EXPECT_EQ(hausdorff_directed(X, X), 0.0);
    const std::vector<Vec2> a{{0, 0}}, b{{3, 4}};
    EXPECT_DOUBLE_EQ(hausdorff_directed(a, b), 5.0);
    const std::vector<Vec2> empty;
    EXPECT_THROW(hausdorff_directed(empty, b), Error);
}

TEST(Hausdorff, BentPolylineToSegmentMatchesDenseOracle) {
    const auto X = resample_stroke(stroke({{0, 0}, {1, 0.5}, {2, 0}}), 0.01).vertices;
    const double got = hausdorff_directed(X, LineSeg{{0, 0}, {2, 0}});
    double oracle = 0.0;
    for (Vec2 p : dense_samples({{0, 0}, {1, 0.5}, {2, 0}}, 1e-3))
        oracle = std::max(oracle, oracle_segment_distance(p, {0, 0}, {2, 0}));
    EXPECT_NEAR(got, 0.5, 1e-12);
    EXPECT_NEAR(got, oracle, 1e-3);
}

TEST(Hausdorff, SegmentToPolylinesMatchesDenseOracle) {
    TestRng rng(5);
    for (int k = 0; k < 50; ++k) {
        std::vector<Vec2> poly;
        for (int i = 0; i < 4; ++i) poly.push_back({i * 1.0, rng.uniform(-0.5, 0.5)});
        const LineSeg seg{{0, 0}, {3, 0}};
        const std::vector<std::vector<Vec2>> Y{poly};
        const double got = hausdorff_directed(seg, Y, 1e-9);
        double oracle = 0.0;
        for (Vec2 q : dense_samples({seg.p0, seg.p1}, 1e-4)) {
            double best = 1e300;
            for (std::size_t i = 0; i + 1 < poly.size(); ++i)
                best = std::min(best, oracle_segment_distance(q, poly[i], poly[i + 1]));
            oracle = std::max(oracle, best);
        }
        EXPECT_NEAR(got, oracle, 1e-4);
        EXPECT_GE(got, oracle - 1e-12);
    }
}

TEST(Hausdorff, ZeroIffContained) {
    const std::vector<Vec2> on{{0, 0}, {0.5, 0}, {2, 0}};
    EXPECT_LE(hausdorff_directed(on, LineSeg{{0, 0}, {2, 0}}), 1e-9);
    const std::vector<Vec2> off{{0, 0}, {0.5, 1e-6}};
    EXPECT_GT(hausdorff_directed(off, LineSeg{{0, 0}, {2, 0}}), 1e-9);
}

TEST(Hausdorff, SymmetricTriangleInequality) {
    TestRng rng(3);
    auto random_set = [&] {
        std::vector<Vec2> s;
        const int n = 1 + static_cast<int>(rng.index(8));
        for (int i = 0; i < n; ++i) s.push_back({rng.uniform(-4, 4), rng.uniform(-4, 4)});
        return s;
    };
    auto sym = [](const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
        return std::max(hausdorff_directed(a, b), hausdorff_directed(b, a));
    };
    for (int k = 0; k < 300; ++k) {
        const auto a = random_set(), b = random_set(), c = random_set();
        EXPECT_LE(sym(a, c), sym(a, b) + sym(b, c) + 1e-12);
    }
}

TEST(CentroidSpread, Examples) {
    const auto dot = centroid_and_spread(stroke({{5, 5}}), 1.0);
    EXPECT_EQ(dot.center, Vec2(5, 5));
    EXPECT_EQ(dot.spread, 0.0);
    const auto seg = centroid_and_spread(stroke({{0, 0}, {2, 0}}), 1.0);
    EXPECT_NEAR(seg.center.x, 1.0, 1e-12);
    EXPECT_NEAR(seg.center.y, 0.0, 1e-12);
    EXPECT_NEAR(seg.spread, 2.0, 1e-12);
}

TEST(CentroidSpread, CornerApproachesArcLengthCentroid) {
    const std::vector<Vec2> poly{{0, 0}, {4, 0}, {4, 3}};
    const auto r = resample_stroke(stroke(poly), 0.01).vertices;
    const auto cs = centroid_and_spread(r);
    const Vec2 oracle = oracle_polyline_centroid(poly);
    EXPECT_NEAR(oracle.x, 20.0 / 7.0, 1e-12);
    EXPECT_NEAR(oracle.y, 4.5 / 7.0, 1e-12);
    EXPECT_NEAR(cs.center.x, oracle.x, 2e-3);
    EXPECT_NEAR(cs.center.y, oracle.y, 2e-3);
    double far = 0.0;
    for (Vec2 p : r) far = std::max(far, distance(p, cs.center));
    EXPECT_DOUBLE_EQ(cs.spread, 2.0 * far);
}

TEST(CentroidSpread, RigidMotionEquivariance) {
    TestRng rng(21);
    for (int k = 0; k < 100; ++k) {
        std::vector<Vec2> v;
        for (int i = 0; i < 5; ++i) v.push_back({rng.uniform(-3, 3), rng.uniform(-3, 3)});
        const double angle = rng.uniform(-kPi, kPi);
        const Vec2 shift{rng.uniform(-50, 50), rng.uniform(-50, 50)};
        std::vector<Vec2> w;
        for (Vec2 p : v) w.push_back(rotated(p, angle) + shift);
        const auto a = centroid_and_spread(stroke(v), 2.0);
        const auto b = centroid_and_spread(stroke(w), 2.0);
        const Vec2 expect = rotated(a.center, angle) + shift;
        EXPECT_NEAR(b.center.x, expect.x, 1e-9);
        EXPECT_NEAR(b.center.y, expect.y, 1e-9);
        EXPECT_NEAR(a.spread, b.spread, 1e-9);
    }
}

TEST(VirtualLine, Endpoints) {
    EXPECT_EQ(endpoint_virtual_line(stroke({{0, 0}, {1, 1}, {2, 0}})), (LineSeg{{0, 0}, {2, 0}}));
    EXPECT_EQ(endpoint_virtual_line(stroke({{0, 0}, {5, 0}})), (LineSeg{{0, 0}, {5, 0}}));
    try {
        endpoint_virtual_line(stroke({{1, 1}, {2, 3}, {3, 1}, {1, 1}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateLine);
    }
}

TEST(Frame, FitOneDFrameSpansStrokes) {
    std::vector<Stroke> strokes{stroke({{0, 0}, {0, 5}}), stroke({{10, 1}, {10, 6}}), stroke({{20, 0}, {20, 4}})};
    const ReferenceFrame f = fit_one_d_frame(strokes);
    EXPECT_EQ(f.kind, FrameKind::OneD);
    EXPECT_GT(f.direction.x, 0.99);
    EXPECT_NEAR(f.direction.norm(), 1.0, 1e-12);
    EXPECT_GT(f.length, 19.0);
    AnalysisParams p;
    p.frame = ReferenceFrame::one_d({}, {1, 0}, 0.0);
    EXPECT_EQ(resolve_frame(p, strokes).frame, f);
}

TEST(Validate, RejectsBadInput) {
    EXPECT_THROW(validate(stroke({})), Error);
    Stroke s = stroke({{0, 0}});
    s.width = 0.0;
    EXPECT_THROW(validate(s), Error);
    AnalysisParams p;
    p.epsilon = 0.0;
    EXPECT_THROW(validate(p), Error);
}
