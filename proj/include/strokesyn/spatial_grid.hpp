#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <vector>

#include "strokesyn/geometry.hpp"

namespace strokesyn {

/// Uniform bucket grid over a fixed point set, for nearest-neighbor and
/// ring-by-ring neighborhood queries.
class PointGrid {
public:
    explicit PointGrid(std::span<const Vec2> points);

    std::size_t size() const { return points_.size(); }
    double cell_size() const { return cell_; }

    /// Nearest other point to points[i]; ties go to the lower index.
    /// Returns size() when there is no other point.
    std::size_t nearest(std::size_t i) const;

    /// Calls fn(j) for every point stored in the square ring of cells at
    /// Chebyshev distance `ring` around the cell containing `p`. Returns
    /// whether any cell lies beyond this ring.
    template <class Fn>
    bool for_each_in_ring(Vec2 p, int ring, Fn&& fn) const {
        const int cx = cell_x(p.x);
        const int cy = cell_y(p.y);
        for (int y = cy - ring; y <= cy + ring; ++y) {
            for (int x = cx - ring; x <= cx + ring; ++x) {
                if (std::max(std::abs(x - cx), std::abs(y - cy)) != ring) continue;
                if (x < 0 || y < 0 || x >= nx_ || y >= ny_) continue;
                const auto c = static_cast<std::size_t>(y * nx_ + x);
                for (std::size_t k = start_[c]; k < start_[c + 1]; ++k) fn(items_[k]);
            }
        }
        return ring < max_ring(cx, cy);
    }

private:
    int cell_x(double x) const;
    int cell_y(double y) const;
    int max_ring(int cx, int cy) const;

    std::vector<Vec2> points_;
    Vec2 origin_{};
    double cell_ = 1.0;
    int nx_ = 1;
    int ny_ = 1;
    std::vector<std::size_t> start_;
    std::vector<std::size_t> items_;
};

/// Distance from each point to its nearest other point.
std::vector<double> nearest_neighbor_distances(std::span<const Vec2> points);

struct RatioStats {
    double mean = 0.0;
    double std = 0.0;
    double ratio = 0.0;  // std / mean, 0 when mean is 0
};

/// Population mean/std of the values and their ratio.
RatioStats ratio_stats(std::span<const double> values);

}  // namespace strokesyn
