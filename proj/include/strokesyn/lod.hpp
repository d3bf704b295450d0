#pragma once

#include <span>
#include <vector>

#include "strokesyn/pattern_synthesis.hpp"

namespace strokesyn {

struct LodOptions {
    /// Scale element extents and spacing with the region instead of keeping
    /// them fixed in device units.
    bool scale_extents = false;
};

/// The analysis as if every reference stroke had been drawn k times larger
/// about the origin.
PatternAnalysis scale_analysis(const PatternAnalysis& a, double k);

/// One synthesis per scale factor k against the region scaled by k about its
/// anchor, using seed + i for the i-th scale. The template's region is ignored.
std::vector<SynthesizedPattern> synthesize_lod(const PatternAnalysis& analysis, const TargetRegion& region,
                                               std::span<const double> scales, const SynthesisRequest& request,
                                               const LodOptions& options = {});

}  // namespace strokesyn
