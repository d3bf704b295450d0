#include "strokesyn/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace strokesyn {

PointGrid::PointGrid(std::span<const Vec2> points) : points_(points.begin(), points.end()) {
    const std::size_t n = points_.size();
    const BoundingBox box = bounding_box(points_);
    if (n == 0) {
        start_.assign(2, 0);
        return;
    }
    origin_ = box.lo;
    const double w = box.width();
    const double h = box.height();
    const double extent = std::max(w, h);
    // About one point per cell for a uniform spread.
    double cell = std::sqrt(std::max(w * h, extent * extent / static_cast<double>(n)) / static_cast<double>(n));
    if (!(cell > 0.0)) cell = 1.0;
    cell_ = cell;
    nx_ = std::max(1, static_cast<int>(std::floor(w / cell_)) + 1);
    ny_ = std::max(1, static_cast<int>(std::floor(h / cell_)) + 1);

    const auto cells = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
    std::vector<std::size_t> cell_of(n);
    start_.assign(cells + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        cell_of[i] = static_cast<std::size_t>(cell_y(points_[i].y) * nx_ + cell_x(points_[i].x));
        ++start_[cell_of[i] + 1];
    }
    for (std::size_t c = 0; c < cells; ++c) start_[c + 1] += start_[c];
    items_.resize(n);
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) items_[fill[cell_of[i]]++] = i;
}

int PointGrid::cell_x(double x) const {
    const double c = std::floor((x - origin_.x) / cell_);
    return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(nx_ - 1)));
}

int PointGrid::cell_y(double y) const {
    const double c = std::floor((y - origin_.y) / cell_);
    return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(ny_ - 1)));
}

int PointGrid::max_ring(int cx, int cy) const {
    return std::max({cx, nx_ - 1 - cx, cy, ny_ - 1 - cy});
}

std::size_t PointGrid::nearest(std::size_t i) const {
    const Vec2 p = points_[i];
    std::size_t best = points_.size();
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int ring = 0;; ++ring) {
        const bool more = for_each_in_ring(p, ring, [&](std::size_t j) {
            if (j == i) return;
            const double d2 = (points_[j] - p).squared_norm();
            if (d2 < best_d2 || (d2 == best_d2 && j < best)) {
                best_d2 = d2;
                best = j;
            }
        });
        // Anything beyond this ring is at least ring * cell away.
        const double reach = static_cast<double>(ring) * cell_;
        if (best_d2 < reach * reach || !more) break;
    }
    return best;
}

std::vector<double> nearest_neighbor_distances(std::span<const Vec2> points) {
    std::vector<double> out(points.size(), 0.0);
    if (points.size() < 2) return out;
    const PointGrid grid(points);
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = distance(points[i], points[grid.nearest(i)]);
    return out;
}

RatioStats ratio_stats(std::span<const double> values) {
    RatioStats s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(var / static_cast<double>(values.size()));
    s.ratio = s.mean > 0.0 ? s.std / s.mean : 0.0;
    return s;
}

}  // namespace strokesyn
