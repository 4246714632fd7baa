#pragma once

#include <cstdint>

namespace vanlat {

// splitmix64. Fixed constants, so seeded streams are identical on every
// platform; never replace with <random> distributions (implementation
// defined output would break byte-identical reports).
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

    // uniform in [0, n), n >= 1, by rejection
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    // uniform in [lo, hi], inclusive
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin() { return (next() & 1) != 0; }
};

// Per-trial substream rule: documented so experiment reports are reproducible
// from (seed, trial) alone.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t trial) {
    SplitMix64 s(seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1)));
    s.next();
    return s;
}

}  // namespace vanlat
