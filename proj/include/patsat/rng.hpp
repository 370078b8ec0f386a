#pragma once

#include <cstdint>

namespace patsat {

/// SplitMix64 (Steele, Lea, Flood 2014): a tiny splittable PRNG whose output
/// is bit-identical on every platform, which is what seeded golden tests
/// need. Not for cryptography.
class splitmix64 {
public:
    explicit splitmix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Unbiased draw from [0, bound) by rejection. bound must be nonzero.
    std::uint64_t bounded(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    bool coin() { return (next() >> 63) != 0; }

    /// Derives an independent child stream.
    splitmix64 split() { return splitmix64(next()); }

private:
    std::uint64_t state_;
};

}  // namespace patsat
