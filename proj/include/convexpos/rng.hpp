#pragma once

#include <cstdint>
#include <random>

namespace convexpos {

// splitmix64 finalizer; used to derive independent per-instance seeds from a
// run seed and a counter so that serial and parallel batches agree.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t counter = 0) { return Rng(mix_seed(seed, counter)); }

inline double uniform(Rng& rng, double lo, double hi) {
    // Not std::uniform_real_distribution: its output is implementation-defined
    // and files must be byte-identical across standard libraries.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
}

}  // namespace convexpos
