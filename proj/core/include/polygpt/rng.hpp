#pragma once

#include <cstdint>

namespace polygpt {

/// splitmix64: tiny deterministic generator used wherever reproducibility
/// across platforms matters (std distributions are implementation-defined).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

/// Per-counter substream seed, so sample i is independent of sample order.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t counter) {
    SplitMix64 g(seed ^ (counter * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    return g.next();
}

}  // namespace polygpt
