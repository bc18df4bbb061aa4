#pragma once

#include <complex>
#include <cstdint>

namespace dlab {

// Deterministic 64-bit generator (splitmix64).  Used everywhere randomness is
// needed so that outputs are reproducible bit-for-bit across runs and
// platforms; <random> distributions are implementation-defined and are not.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform on [0, 1), 53 random bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform on [-1, 1]
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

    std::complex<double> uniform_box() { return {uniform_pm1(), uniform_pm1()}; }

    std::complex<double> unit_complex();
};

// Mixes a seed with an integer key into a fresh stream.  A mode's draw then
// depends only on (seed, xi), not on the cutoff K, so truncations of the same
// random state share their low modes exactly.
std::uint64_t mix_seed(std::uint64_t seed, std::int64_t key);

} // namespace dlab
