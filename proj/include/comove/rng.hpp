#pragma once

#include <cstdint>
#include <random>

namespace comove {

/// Seedable generator for the simulators: 64-bit Mersenne Twister
/// (std::mt19937_64, whose output sequence the C++ standard fixes) with the
/// integer-to-real conversions done here so results do not depend on the
/// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n); n must be positive. Unbiased (rejection).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    bool chance(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace comove
