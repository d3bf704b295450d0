#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "strokesyn/pattern_model.hpp"

namespace strokesyn::testing {

/// Test-side generator, independent of the library's Rng. Only raw
/// mt19937_64 output is used, so values are identical on every platform.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

private:
    std::mt19937_64 engine_;
};

struct Fixture {
    std::string name;
    std::vector<Stroke> strokes;
    AnalysisParams params;
    /// Synthesis target in the same frame kind (polygon for 2D, straight
    /// path along the frame axis for 1D).
    std::vector<Vec2> target;
};

/// The 30 gesture fixtures: sketched lines, dashed lines, crosses and small
/// circles, in 1D and 2D arrangements.
const std::vector<Fixture>& gesture_fixtures();

}  // namespace strokesyn::testing
