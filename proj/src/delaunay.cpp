#include "strokesyn/delaunay.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace strokesyn {

namespace {

struct Tri {
    std::size_t v[3];
};

// Positive when d lies strictly inside the circumcircle of the CCW triangle abc.
double in_circle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double ad = adx * adx + ady * ady;
    const double bd = bdx * bdx + bdy * bdy;
    const double cd = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

}  // namespace

Triangulation delaunay(std::span<const Vec2> points) {
    Triangulation out;
    const std::size_t n = points.size();
    if (n < 2) return out;

    // Collapse exact duplicates onto their first occurrence.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].x != points[b].x) return points[a].x < points[b].x;
        if (points[a].y != points[b].y) return points[a].y < points[b].y;
        return a < b;
    });
    std::vector<std::size_t> unique;
    std::vector<std::pair<std::size_t, std::size_t>> links;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = order[k];
        if (!unique.empty() && points[unique.back()] == points[i])
            links.emplace_back(std::min(unique.back(), i), std::max(unique.back(), i));
        else
            unique.push_back(i);
    }

    std::vector<Vec2> pts;
    pts.reserve(unique.size() + 3);
    for (std::size_t i : unique) pts.push_back(points[i]);
    const BoundingBox box = bounding_box(pts);
    const double span = std::max({box.width(), box.height(), 1.0});
    const Vec2 mid = (box.lo + box.hi) * 0.5;
    const std::size_t s0 = pts.size();
    pts.push_back(mid + Vec2{-100.0 * span, -100.0 * span});
    pts.push_back(mid + Vec2{100.0 * span, -100.0 * span});
    pts.push_back(mid + Vec2{0.0, 100.0 * span});

    std::vector<Tri> tris{{{s0, s0 + 1, s0 + 2}}};
    std::vector<Tri> keep;
    std::map<std::pair<std::size_t, std::size_t>, int> boundary;
    for (std::size_t p = 0; p < s0; ++p) {
        keep.clear();
        boundary.clear();
        for (const Tri& t : tris) {
            if (in_circle(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]], pts[p]) > 0.0) {
                for (int e = 0; e < 3; ++e) {
                    const std::size_t a = t.v[e];
                    const std::size_t b = t.v[(e + 1) % 3];
                    // Directed edges of the cavity boundary appear once; shared
                    // interior edges appear in both directions and cancel.
                    auto rev = boundary.find({b, a});
                    if (rev != boundary.end()) boundary.erase(rev);
                    else boundary[{a, b}] = 1;
                }
            } else {
                keep.push_back(t);
            }
        }
        for (const auto& [edge, count] : boundary) {
            (void)count;
            Tri t{{edge.first, edge.second, p}};
            if (cross(pts[t.v[1]] - pts[t.v[0]], pts[t.v[2]] - pts[t.v[0]]) > 0.0) keep.push_back(t);
        }
        tris.swap(keep);
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges = links;
    for (const Tri& t : tris) {
        if (t.v[0] >= s0 || t.v[1] >= s0 || t.v[2] >= s0) continue;
        const std::array<std::size_t, 3> ids{unique[t.v[0]], unique[t.v[1]], unique[t.v[2]]};
        out.triangles.push_back(ids);
        for (int e = 0; e < 3; ++e) {
            const std::size_t a = ids[e];
            const std::size_t b = ids[(e + 1) % 3];
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    // Hull edges whose only triangles touched the super triangle.
    for (const Tri& t : tris) {
        int real = 0;
        for (std::size_t v : t.v) real += v < s0 ? 1 : 0;
        if (real != 2) continue;
        std::size_t a = 0, b = 0;
        bool first = true;
        for (std::size_t v : t.v) {
            if (v >= s0) continue;
            if (first) {
                a = unique[v];
                first = false;
            } else {
                b = unique[v];
            }
        }
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    out.edges = std::move(edges);
    return out;
}

}  // namespace strokesyn
