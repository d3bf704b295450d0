#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "strokesyn/element_analysis.hpp"

namespace strokesyn {

/// The four perceptual pair measures. par/ov/sep are only meaningful when
/// both elements are lines (`lines` is then true).
struct PairProperties {
    double prox = 0.0;
    double par = 0.0;
    double ov = 0.0;
    double sep = 0.0;
    bool lines = false;

    bool operator==(const PairProperties&) const = default;
};

/// Pair measures together with the vectors they are derived from, measured
/// from `other` towards `moved`:
///   offset     = c_moved - c_other
///   theta      = signed acute angle from other's axis to moved's axis
///   overlap    = projection of c_moved - c_other on the bisector
///   separation = projection of c_other - c_moved on the bisector normal
struct PairGeometry {
    PairProperties props;
    Vec2 offset{};
    double theta = 0.0;
    Vec2 bisector{};
    Vec2 overlap{};
    Vec2 separation{};
    double projected_length_sum = 0.0;
};

PairGeometry measure_pair(const Element& moved, const Element& other);
PairProperties pair_properties(const Element& a, const Element& b);

struct PropertyStats {
    double mean = 0.0;
    double std = 0.0;
    double min = 0.0;
    double max = 0.0;

    bool operator==(const PropertyStats&) const = default;
};

/// Population statistics; requires at least one value.
PropertyStats compute_stats(std::span<const double> values);

struct GraphEdge {
    std::size_t a = 0;  // a < b, element ids
    std::size_t b = 0;
    PairProperties props;

    bool operator==(const GraphEdge&) const = default;
};

struct NeighborGraph {
    std::vector<std::size_t> nodes;    // ids of valid elements, ascending
    std::vector<std::size_t> nearest;  // nearest[k] is the nearest neighbor of nodes[k]
    std::vector<GraphEdge> edges;      // sorted by (a, b)
    bool collinear_fallback = false;

    bool operator==(const NeighborGraph&) const = default;

    std::optional<std::size_t> nearest_of(std::size_t id) const;
};

/// Nearest-neighbor graph over the valid elements: a chain along the main
/// axis for 1D frames, a filtered Delaunay triangulation for 2D frames.
NeighborGraph build_neighbor_graph(std::span<const Element> elements, const ReferenceFrame& frame);

/// Chain graph over valid elements visited in the given order (used for
/// elements laid out along a curved path).
NeighborGraph build_chain_graph(std::span<const Element> elements, std::span<const std::size_t> order);

struct ElementStats {
    std::optional<PropertyStats> size;
    std::optional<PropertyStats> length;
    std::optional<PropertyStats> width;
    std::optional<PropertyStats> orientation;
    std::optional<PropertyStats> perp_offset;

    bool operator==(const ElementStats&) const = default;
};

struct PairStats {
    PropertyStats prox;
    std::optional<PropertyStats> par;
    std::optional<PropertyStats> ov;
    std::optional<PropertyStats> sep;

    bool operator==(const PairStats&) const = default;
};

struct PatternAnalysis {
    AnalysisParams params;
    std::vector<Element> elements;
    /// Parallel to `elements`; empty for invalid elements.
    std::vector<std::optional<ElementProperties>> properties;
    NeighborGraph graph;
    ElementStats element_stats;
    PairStats pair_stats;
    std::size_t n_ref = 0;
    /// Reference area (2D, pixels^2) or main-axis length (1D, pixels).
    double measure_ref = 0.0;

    bool operator==(const PatternAnalysis&) const = default;
};

ElementStats compute_element_stats(const PatternAnalysis& a);
PairStats compute_pair_stats(const NeighborGraph& g);

/// Reference measure: region area if the 2D frame has one, otherwise the
/// bounding-box area of the valid elements' strokes; 1D uses the axis length.
double reference_measure(std::span<const Element> elements, const ReferenceFrame& frame);

/// Full pipeline: clustering, element properties, graph, statistics.
PatternAnalysis analyze(std::span<const Stroke> strokes, const AnalysisParams& params);

/// Rebuild the derived parts of an analysis from its params and elements.
PatternAnalysis analyze_elements(std::vector<Element> elements, const AnalysisParams& params);

}  // namespace strokesyn
