#pragma once

#include <optional>
#include <span>
#include <string>

#include "strokesyn/pattern_synthesis.hpp"

namespace strokesyn {

struct SvgBackground {
    std::string png;  // raw PNG bytes, embedded as a data URI
    Vec2 origin{};
    double width = 0.0;
    double height = 0.0;
};

struct SvgOptions {
    /// Canvas bounds; defaults to the stroke bounds grown by the half widths
    /// plus `margin`.
    std::optional<BoundingBox> view_box;
    double margin = 2.0;
    std::optional<SvgBackground> background;
    std::string line_cap = "round";
};

/// Shortest fixed-point form with at most three decimals ("1.5", "-0.125", "2").
std::string format_number(double v);

/// One path per stroke in the given order.
std::string export_svg(std::span<const Stroke> strokes, const SvgOptions& options = {});
/// Strokes by node id, then member-stroke order. Throws on an empty pattern.
std::string export_svg(const SynthesizedPattern& pattern, const SvgOptions& options = {});

}  // namespace strokesyn
