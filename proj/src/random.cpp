#include "strokesyn/random.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>

namespace strokesyn {

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(derive(seed, 0)) {}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng Rng::split(std::uint64_t stream) const { return Rng(derive(seed_, stream + 1)); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::index(std::size_t n) {
    const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return std::min(k, n - 1);
}

double Rng::standard_normal() {
    // Midpoint of the 2^-53 bucket keeps the argument strictly inside (0, 1).
    const double u = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    static const boost::math::normal_distribution<double> unit;
    return boost::math::quantile(unit, u);
}

}  // namespace strokesyn
