#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace strokesyn {

/// Seedable, splittable generator. Streams derived with split() are
/// independent of how many draws the parent has made, so per-node streams
/// stay deterministic regardless of evaluation order.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }
    Rng split(std::uint64_t stream) const;

    /// SplitMix64 finalizer over (seed, stream).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    /// Uniform in {0, ..., n - 1}; n must be positive.
    std::size_t index(std::size_t n);
    /// Standard normal draw through the inverse normal CDF.
    double standard_normal();

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace strokesyn
