#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "strokesyn/pattern_model.hpp"

namespace strokesyn {

enum class ElementKind { Point, Line };

/// A cluster of strokes read as one point or one line at scale epsilon.
/// Points use `center`/`size`; lines use `axis`/`length`/`width`, and their
/// `center` is the axis midpoint.
struct Element {
    ElementKind kind = ElementKind::Point;
    Vec2 center{};
    double size = 0.0;
    LineSeg axis{};
    double length = 0.0;
    double width = 0.0;
    std::vector<Stroke> strokes;
    bool valid = true;
    std::uint64_t min_draw_index = 0;

    bool operator==(const Element&) const = default;

    /// Spread against epsilon: size for points, width for lines.
    double spread() const { return kind == ElementKind::Point ? size : width; }
};

struct ElementProperties {
    ElementKind kind = ElementKind::Point;
    double size = 0.0;
    double length = 0.0;
    double width = 0.0;
    double orientation = 0.0;
    std::optional<double> perp_offset;

    bool operator==(const ElementProperties&) const = default;
};

ElementKind element_kind_for(PatternType type);

Element fit_point(const Stroke& s, double eps);
Element fit_line(const Stroke& s, double eps);

/// Line spread: 2 max(d_H(S, axis), d_H(axis, S)) over the given strokes.
double line_spread(std::span<const Stroke> strokes, const LineSeg& axis);

/// Least-squares line through the four axis endpoints, clipped to the
/// extreme projections. Direction follows `a`'s axis.
LineSeg fit_merged_axis(const LineSeg& a, const LineSeg& b);

std::optional<Element> try_merge(const Element& a, const Element& b, double eps);

/// Greedy clustering in drawing order; output sorted by min_draw_index.
std::vector<Element> cluster_elements(std::span<const Stroke> strokes, const AnalysisParams& params);

ElementProperties element_properties(const Element& e, const ReferenceFrame& frame);

}  // namespace strokesyn
