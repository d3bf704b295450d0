#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "strokesyn/geometry.hpp"

namespace strokesyn {

struct Triangulation {
    std::vector<std::array<std::size_t, 3>> triangles;  // counter-clockwise
    /// Unique undirected edges (i < j), sorted. Exact duplicate input points
    /// are not triangulated; each is linked to its first occurrence instead.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Bowyer-Watson Delaunay triangulation. Returns no triangles when every
/// point is collinear; the edges then link consecutive points along the line
/// plus duplicate links.
Triangulation delaunay(std::span<const Vec2> points);

}  // namespace strokesyn
