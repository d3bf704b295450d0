#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strokesyn/distribution_synthesis.hpp"
#include "strokesyn/random.hpp"

namespace strokesyn {

/// Property-assignment policy, from statistics-driven to data-driven.
enum class Behavior { Sampling, Copying, Cloning };

const char* to_string(Behavior b);
std::optional<Behavior> behavior_from_string(const std::string& s);

struct SynthesisRequest {
    TargetRegion region;
    Behavior behavior = Behavior::Copying;
    double alpha = 1.0;  // correction amount in [0, 1]
    std::uint64_t seed = 0;
    std::optional<double> r_star;
    std::optional<std::size_t> node_count;
    std::size_t max_iters = kDefaultMaxIterations;

    bool operator==(const SynthesisRequest&) const = default;
};

void validate(const SynthesisRequest& r);

struct PlacedElement {
    std::size_t node_id = 0;
    std::size_t source_element_id = 0;
    /// Properties assigned by the behavior, before extent clamping.
    ElementProperties assigned;
    /// Placed geometry and transformed member strokes.
    Element element;
    double rotation = 0.0;  // angle of the local x axis in the plane
    Vec2 scale{1.0, 1.0};   // local x / y scale applied to the source shape
    bool frozen = false;

    bool operator==(const PlacedElement&) const = default;
};

struct Provenance {
    std::string analysis_id;
    std::uint64_t seed = 0;
    std::size_t node_count = 0;
    std::size_t lloyd_iterations = 0;
    double lloyd_ratio = 0.0;
    bool lloyd_reached_max_iters = false;
    double out_of_region_fraction = 0.0;
    std::size_t corrected_edges = 0;
    std::size_t skipped_edges = 0;
    std::vector<std::string> warnings;

    bool operator==(const Provenance&) const = default;
};

struct SynthesizedPattern {
    std::vector<PlacedElement> elements;  // index == node_id
    NeighborGraph graph;
    SynthesisRequest request;
    Provenance provenance;
    /// Arc-length parameter of each node for path targets (empty for 2D).
    std::vector<double> node_params;

    bool operator==(const SynthesizedPattern&) const = default;
};

/// Stable 16-hex-digit fingerprint of an analysis' numeric content.
std::string analysis_fingerprint(const PatternAnalysis& a);

struct SampledValue {
    double value = 0.0;
    bool clamped = false;  // rejection budget exhausted
};

constexpr int kMaxRejections = 64;

/// Gaussian(mean, std) through the inverse CDF, rejected outside [min, max].
SampledValue sample_property(const PropertyStats& stats, Rng& rng);

struct Assignment {
    std::optional<std::size_t> shape_source;  // unset for Copying
    ElementProperties props;
};

Assignment assign_element_properties(Behavior behavior, const PatternAnalysis& analysis, Rng& rng);

/// Copying/Cloning shape rule: the reference edge whose proximity is closest
/// to `proximity`, then one of its endpoints at random.
std::size_t shape_source_by_proximity(const PatternAnalysis& analysis, double proximity, Rng& rng);

/// Where and how a node is anchored: its position and the local x axis
/// (path tangent for 1D targets, global X for 2D).
struct NodeFrame {
    Vec2 position{};
    Vec2 base_direction{1.0, 0.0};
    bool along_path = false;
};

PlacedElement instantiate(const NodeFrame& node, const ElementProperties& props, const Element& shape_source,
                          const ReferenceFrame& source_frame, double eps);

PairProperties pair_targets(Behavior behavior, const PatternAnalysis& analysis, const PairProperties& current,
                            Rng& rng);

/// Rigid motion of a placed element: rotation about its center, then translation.
void transform_placed(PlacedElement& p, double rotation, Vec2 translation);

struct PairCorrection {
    double rotation = 0.0;
    Vec2 translation{};
    bool skipped = false;
};

/// Correction for `moved` towards `targets` relative to `other`, scaled by alpha.
/// Lines: rotation from parallelism first, then overlap/separation measured on
/// the rotated geometry.
PairCorrection correction_for(const Element& moved, const Element& other, const PairProperties& targets,
                              double alpha);

/// Greedy nearest-neighbor correction pass; every node moves at most once.
SynthesizedPattern correct(SynthesizedPattern pattern, const PatternAnalysis& analysis, Behavior behavior,
                           double alpha, Rng& rng);

/// Nearest-neighbor graph over placed centers.
NeighborGraph placed_graph(const SynthesizedPattern& pattern);

SynthesizedPattern synthesize(const PatternAnalysis& analysis, const SynthesisRequest& request);

/// Strokes of the pattern in node order with fresh sequential draw indices.
std::vector<Stroke> pattern_strokes(const SynthesizedPattern& pattern);

}  // namespace strokesyn
