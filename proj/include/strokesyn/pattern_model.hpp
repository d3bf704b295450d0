#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "strokesyn/geometry.hpp"

namespace strokesyn {

struct Rgba {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
    double a = 1.0;

    bool operator==(const Rgba&) const = default;
};

/// A user gesture: an ordered polyline plus its render attributes.
struct Stroke {
    std::vector<Vec2> vertices;
    double width = 1.0;
    Rgba color{};
    double opacity = 1.0;
    std::uint64_t draw_index = 0;

    bool operator==(const Stroke&) const = default;
};

enum class FrameKind { OneD, TwoD };
enum class PatternType { Hatching, Stippling };

/// 1D frames carry a directed main axis; 2D frames use the global X axis and
/// may carry the reference region used to measure the reference area.
struct ReferenceFrame {
    FrameKind kind = FrameKind::TwoD;
    Vec2 origin{};
    Vec2 direction{1.0, 0.0};
    double length = 0.0;
    Polygon region;

    bool operator==(const ReferenceFrame&) const = default;

    static ReferenceFrame one_d(Vec2 origin, Vec2 direction, double length);
    static ReferenceFrame two_d(Polygon region = {});

    /// Direction orientations are measured against.
    Vec2 main_direction() const { return kind == FrameKind::OneD ? direction : Vec2{1.0, 0.0}; }
};

struct AnalysisParams {
    PatternType pattern_type = PatternType::Hatching;
    ReferenceFrame frame{};
    double epsilon = 1.0;

    bool operator==(const AnalysisParams&) const = default;
};

/// 1D frame along the principal axis of all stroke vertices, spanning their
/// projections. The direction points towards +x (or +y when vertical).
ReferenceFrame fit_one_d_frame(std::span<const Stroke> strokes);

/// Params with an unset 1D frame (zero length) replaced by fit_one_d_frame.
AnalysisParams resolve_frame(AnalysisParams params, std::span<const Stroke> strokes);

void validate(const Stroke& s);
void validate(const ReferenceFrame& f);
void validate(const AnalysisParams& p);

/// Uniformly subdivide every segment so consecutive vertices are at most
/// `step` apart. Original vertices are kept; zero-length segments collapse.
Stroke resample_stroke(const Stroke& s, double step);

/// Resampling step used before centroid/spread measurement at scale `epsilon`:
/// min(epsilon / 10, shortest non-degenerate segment) / 2, floored at 1e-3.
double measurement_step(const Stroke& s, double epsilon);

/// max over x in X of min over y in Y of |x - y|.
double hausdorff_directed(std::span<const Vec2> X, std::span<const Vec2> Y);
/// Exact point-to-segment distances on the Y side.
double hausdorff_directed(std::span<const Vec2> X, const LineSeg& Y);
/// Directed distance from the continuous segment X to a set of polylines.
/// Solved by Lipschitz branch-and-bound to within `abs_tol`.
double hausdorff_directed(const LineSeg& X, std::span<const std::vector<Vec2>> Y,
                          double abs_tol = 1e-9);

struct CentroidSpread {
    Vec2 center;
    double spread = 0.0;
};

/// Mean of `samples` and twice the largest distance from it.
CentroidSpread centroid_and_spread(std::span<const Vec2> samples);
/// Resamples at measurement_step(s, epsilon) first.
CentroidSpread centroid_and_spread(const Stroke& s, double epsilon);

/// Segment from the first to the last vertex. Throws DegenerateLine when they coincide.
LineSeg endpoint_virtual_line(const Stroke& s);

}  // namespace strokesyn
