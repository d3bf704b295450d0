#include "strokesyn/distribution_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "strokesyn/error.hpp"
#include "strokesyn/random.hpp"
#include "strokesyn/spatial_grid.hpp"

namespace strokesyn {

TargetRegion TargetRegion::path(std::vector<Vec2> vertices) {
    return {RegionKind::Path1D, std::move(vertices)};
}

TargetRegion TargetRegion::polygon(std::vector<Vec2> vertices) {
    return {RegionKind::Region2D, std::move(vertices)};
}

namespace {

double path_length(std::span<const Vec2> v) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) len += distance(v[i], v[i + 1]);
    return len;
}

// Segment index and local offset for arc length s, clamped to the end segments.
std::pair<std::size_t, double> locate(std::span<const Vec2> v, double s) {
    std::size_t last = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (distance(v[i], v[i + 1]) > 0.0) last = i;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double len = distance(v[i], v[i + 1]);
        if (len == 0.0) continue;
        if (s <= acc + len || i == last) return {i, s - acc};
        acc += len;
    }
    return {0, s};
}

}  // namespace

double TargetRegion::measure() const {
    return kind == RegionKind::Path1D ? path_length(vertices) : polygon_area(vertices);
}

Vec2 TargetRegion::anchor() const {
    return kind == RegionKind::Path1D ? point_at(0.5 * measure()) : polygon_centroid(vertices);
}

Vec2 TargetRegion::point_at(double s) const {
    const auto [i, t] = locate(vertices, s);
    return vertices[i] + normalized(vertices[i + 1] - vertices[i]) * t;
}

Vec2 TargetRegion::tangent_at(double s) const {
    const auto [i, t] = locate(vertices, s);
    (void)t;
    return normalized(vertices[i + 1] - vertices[i]);
}

void validate(const TargetRegion& region) {
    for (Vec2 v : region.vertices)
        if (!v.finite()) throw Error(ErrorCode::InvalidGeometry, "region has a non-finite vertex");
    if (region.kind == RegionKind::Path1D) {
        if (region.vertices.size() < 2 || !(path_length(region.vertices) > 0.0))
            throw Error(ErrorCode::InvalidGeometry, "path must have positive length");
    } else {
        if (!polygon_is_simple(region.vertices))
            throw Error(ErrorCode::InvalidGeometry, "region must be a simple polygon");
        if (!(polygon_area(region.vertices) > 0.0))
            throw Error(ErrorCode::InvalidGeometry, "region must have positive area");
    }
}

TargetRegion scaled(const TargetRegion& region, double k) {
    const Vec2 c = region.anchor();
    TargetRegion out = region;
    for (Vec2& v : out.vertices) v = c + (v - c) * k;
    return out;
}

std::size_t seed_count(const PatternAnalysis& analysis, const TargetRegion& region) {
    const double measure = region.measure();
    if (!(measure > 0.0) || !(analysis.measure_ref > 0.0))
        throw Error(ErrorCode::Precondition, "region and reference measures must be positive");
    const double n = std::round(static_cast<double>(analysis.n_ref) * measure / analysis.measure_ref);
    return static_cast<std::size_t>(std::max(n, 2.0));
}

std::vector<double> nearest_neighbor_lengths(const Distribution& d) {
    if (d.kind == RegionKind::Region2D) return nearest_neighbor_distances(d.points);
    std::vector<double> out(d.params.size(), 0.0);
    const std::size_t n = d.params.size();
    if (n < 2) return out;
    for (std::size_t k = 0; k < n; ++k) {
        double best = std::numeric_limits<double>::infinity();
        if (k > 0) best = std::min(best, d.params[k] - d.params[k - 1]);
        if (k + 1 < n) best = std::min(best, d.params[k + 1] - d.params[k]);
        out[k] = best;
    }
    return out;
}

namespace {

// Clip `cell` to the half plane dot(p - origin, normal) <= 0 in place,
// using `scratch` as the output buffer. Returns early when nothing is cut.
void clip_cell(Polygon& cell, Polygon& scratch, Vec2 origin, Vec2 normal) {
    bool cuts = false;
    for (Vec2 v : cell)
        if (dot(v - origin, normal) > 0.0) { cuts = true; break; }
    if (!cuts) return;
    scratch.clear();
    const std::size_t n = cell.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = cell[i];
        const Vec2 b = cell[(i + 1) % n];
        const double da = dot(a - origin, normal);
        const double db = dot(b - origin, normal);
        if (da <= 0.0) scratch.push_back(a);
        if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) scratch.push_back(a + (b - a) * (da / (da - db)));
    }
    cell.swap(scratch);
}

}  // namespace

std::vector<Polygon> clipped_voronoi_cells(std::span<const Vec2> sites, const Polygon& region) {
    std::vector<Polygon> cells(sites.size());
    if (sites.empty()) return cells;
    const PointGrid grid(sites);
    Polygon cell, scratch;
    std::vector<std::pair<double, std::size_t>> ring_sites;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const Vec2 s = sites[i];
        cell.assign(region.begin(), region.end());
        auto radius = [&] {
            double r2 = 0.0;
            for (Vec2 v : cell) r2 = std::max(r2, (v - s).squared_norm());
            return std::sqrt(r2);
        };
        double reach_needed = 2.0 * radius();
        for (int ring = 0;; ++ring) {
            // Nearest sites first: they cut the most and shrink later work.
            ring_sites.clear();
            const bool more = grid.for_each_in_ring(s, ring, [&](std::size_t j) {
                if (j != i) ring_sites.emplace_back((sites[j] - s).squared_norm(), j);
            });
            std::sort(ring_sites.begin(), ring_sites.end());
            for (const auto& [d2, j] : ring_sites) {
                if (d2 > reach_needed * reach_needed) break;
                clip_cell(cell, scratch, (s + sites[j]) * 0.5, sites[j] - s);
                reach_needed = 2.0 * radius();
            }
            // Sites in later rings are at least ring * cell_size away and
            // cannot cut a cell of this radius.
            if (!more || static_cast<double>(ring) * grid.cell_size() >= reach_needed) break;
        }
        cells[i] = cell;
    }
    return cells;
}

void lloyd_step(std::vector<double>& params, double length) {
    std::sort(params.begin(), params.end());
    const std::size_t n = params.size();
    if (n == 0) return;
    std::vector<double> bounds(n + 1);
    bounds[0] = 0.0;
    bounds[n] = length;
    for (std::size_t k = 1; k < n; ++k) bounds[k] = 0.5 * (params[k - 1] + params[k]);
    for (std::size_t k = 0; k < n; ++k) params[k] = 0.5 * (bounds[k] + bounds[k + 1]);
}

void lloyd_step(std::vector<Vec2>& sites, const Polygon& region) {
    const auto cells = clipped_voronoi_cells(sites, region);
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (cells[i].size() < 3 || polygon_area(cells[i]) <= 0.0) continue;
        Vec2 c = polygon_centroid(cells[i]);
        // Cells of non-convex regions can have their centroid outside.
        if (!polygon_contains(region, c)) c = closest_point_on_boundary(region, c);
        sites[i] = c;
    }
}

namespace {

void refresh_points(Distribution& d, const TargetRegion& region) {
    if (d.kind != RegionKind::Path1D) return;
    d.points.clear();
    for (double s : d.params) d.points.push_back(region.point_at(s));
}

double current_ratio(const Distribution& d) {
    const auto lengths = nearest_neighbor_lengths(d);
    return ratio_stats(lengths).ratio;
}

}  // namespace

Distribution lloyd_relax_from(Distribution d, const TargetRegion& region, double r_star, std::size_t max_iters) {
    validate(region);
    const std::size_t n = d.kind == RegionKind::Path1D ? d.params.size() : d.points.size();
    if (n < 2) throw Error(ErrorCode::InsufficientPoints, "Lloyd relaxation needs at least 2 points");
    if (!(r_star >= 0.0)) throw Error(ErrorCode::Precondition, "r_star must be non-negative");
    if (max_iters < 1) throw Error(ErrorCode::Precondition, "max_iters must be at least 1");

    const double length = region.measure();
    if (d.kind == RegionKind::Path1D) std::sort(d.params.begin(), d.params.end());
    double r = current_ratio(d);
    std::size_t iters = 0;
    while (!(r < r_star) && iters < max_iters) {
        if (d.kind == RegionKind::Path1D) lloyd_step(d.params, length);
        else lloyd_step(d.points, region.vertices);
        ++iters;
        r = current_ratio(d);
    }
    refresh_points(d, region);
    d.iterations_used = iters;
    d.final_ratio = r;
    d.reached_max_iters = !(r < r_star);
    d.out_of_region_fraction = 0.0;
    return d;
}

Distribution lloyd_relax(std::size_t n, const TargetRegion& region, double r_star, std::uint64_t seed,
                         std::size_t max_iters) {
    if (n < 2) throw Error(ErrorCode::InsufficientPoints, "Lloyd relaxation needs at least 2 points");
    validate(region);
    Rng rng(seed);
    Distribution d;
    d.kind = region.kind;
    d.rng_seed = seed;
    if (region.kind == RegionKind::Path1D) {
        const double length = region.measure();
        for (std::size_t i = 0; i < n; ++i) d.params.push_back(rng.uniform(0.0, length));
    } else {
        const BoundingBox box = bounding_box(region.vertices);
        while (d.points.size() < n) {
            const Vec2 p{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)};
            if (polygon_contains(region.vertices, p)) d.points.push_back(p);
        }
    }
    return lloyd_relax_from(std::move(d), region, r_star, max_iters);
}

Distribution rescale_to_mean(const Distribution& d, double mu_star, const TargetRegion& region) {
    const auto stats = ratio_stats(nearest_neighbor_lengths(d));
    if (!(stats.mean > 0.0))
        throw Error(ErrorCode::DegenerateDistribution, "nearest-neighbor mean is zero");
    const double k = mu_star / stats.mean;
    Distribution out = d;
    std::size_t outside = 0;
    if (d.kind == RegionKind::Path1D) {
        const double length = region.measure();
        const double mid = 0.5 * length;
        for (double& s : out.params) {
            s = mid + (s - mid) * k;
            if (s < -tolerance() || s > length + tolerance()) ++outside;
        }
        refresh_points(out, region);
    } else {
        const Vec2 c = region.anchor();
        for (Vec2& p : out.points) {
            p = c + (p - c) * k;
            if (!polygon_contains(region.vertices, p)) ++outside;
        }
    }
    const std::size_t n = d.kind == RegionKind::Path1D ? out.params.size() : out.points.size();
    out.out_of_region_fraction = n == 0 ? 0.0 : static_cast<double>(outside) / static_cast<double>(n);
    return out;
}

}  // namespace strokesyn
