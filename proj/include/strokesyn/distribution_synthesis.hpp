#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "strokesyn/group_analysis.hpp"

namespace strokesyn {

enum class RegionKind { Path1D, Region2D };

/// Where a pattern is synthesized: a guide polyline (1D) or a simple
/// polygon (2D).
struct TargetRegion {
    RegionKind kind = RegionKind::Region2D;
    std::vector<Vec2> vertices;

    bool operator==(const TargetRegion&) const = default;

    static TargetRegion path(std::vector<Vec2> vertices);
    static TargetRegion polygon(std::vector<Vec2> vertices);

    FrameKind frame_kind() const { return kind == RegionKind::Path1D ? FrameKind::OneD : FrameKind::TwoD; }
    /// Path length (1D) or polygon area (2D).
    double measure() const;
    /// Scaling anchor: arc-length midpoint (1D) or area centroid (2D).
    Vec2 anchor() const;

    /// Path evaluation by arc length; parameters outside [0, length]
    /// extrapolate along the end segments.
    Vec2 point_at(double s) const;
    Vec2 tangent_at(double s) const;
};

void validate(const TargetRegion& region);

/// Region uniformly scaled by `k` about its anchor.
TargetRegion scaled(const TargetRegion& region, double k);

struct Distribution {
    RegionKind kind = RegionKind::Region2D;
    /// Arc-length parameters, ascending (1D only).
    std::vector<double> params;
    /// Positions in the plane (both kinds; 1D positions lie on the path).
    std::vector<Vec2> points;
    std::uint64_t rng_seed = 0;
    std::size_t iterations_used = 0;
    double final_ratio = 0.0;
    bool reached_max_iters = false;
    double out_of_region_fraction = 0.0;

    bool operator==(const Distribution&) const = default;
};

std::size_t seed_count(const PatternAnalysis& analysis, const TargetRegion& region);

/// Nearest-neighbor edge lengths of the distribution: arc-length gaps along
/// the path (1D) or euclidean distances (2D).
std::vector<double> nearest_neighbor_lengths(const Distribution& d);

/// Voronoi cells of `sites` clipped to `region`, one per site.
std::vector<Polygon> clipped_voronoi_cells(std::span<const Vec2> sites, const Polygon& region);

/// One Lloyd iteration: every site moves to the centroid of its cell.
void lloyd_step(std::vector<double>& params, double length);
void lloyd_step(std::vector<Vec2>& sites, const Polygon& region);

constexpr std::size_t kDefaultMaxIterations = 1000;

/// Iterate Lloyd steps from a given start until r < r_star or max_iters.
Distribution lloyd_relax_from(Distribution start, const TargetRegion& region, double r_star,
                              std::size_t max_iters = kDefaultMaxIterations);

/// Seeded uniform start followed by lloyd_relax_from.
Distribution lloyd_relax(std::size_t n, const TargetRegion& region, double r_star, std::uint64_t seed,
                         std::size_t max_iters = kDefaultMaxIterations);

/// Uniform scale about the region anchor so the nearest-neighbor mean
/// becomes mu_star. Points are allowed to leave the region.
Distribution rescale_to_mean(const Distribution& d, double mu_star, const TargetRegion& region);

}  // namespace strokesyn
