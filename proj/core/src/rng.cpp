#include "dlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace dlab {

std::complex<double> SplitMix64::unit_complex() {
    double theta = 2.0 * std::numbers::pi * uniform01();
    return {std::cos(theta), std::sin(theta)};
}

std::uint64_t mix_seed(std::uint64_t seed, std::int64_t key) {
    SplitMix64 g(seed ^ (0x632be59bd9b4e019ull * static_cast<std::uint64_t>(key) + 0xff51afd7ed558ccdull));
    g.next();
    return g.next();
}

} // namespace dlab
