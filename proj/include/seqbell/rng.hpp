#pragma once

#include <cstdint>

namespace seqbell {

// splitmix64: tiny, fast, and — unlike the standard-library distributions —
// produces identical streams on every compiler, which the byte-identical
// determinism contract needs.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1): the top 53 bits scaled by 2^-53.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }
};

// Independent per-restart stream: restarts must give the same samples no
// matter which thread runs them or in which order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
    return mix.next();
}

} // namespace seqbell
