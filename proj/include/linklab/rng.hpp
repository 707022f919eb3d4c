// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace linklab {

/// Deterministic RNG: mt19937_64 raw stream (sequence fixed by the standard)
/// with our own scaling, so outputs are identical across compilers and
/// platforms. std::*_distribution is not used anywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t u64() { return eng_(); }

    std::uint64_t below(std::uint64_t n) { return n ? eng_() % n : 0; }

    /// Uniform in [lo, hi] inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Standard normal via Box-Muller (cosine branch only).
    double gauss() {
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    bool coin() { return (eng_() & 1u) != 0; }

private:
    std::mt19937_64 eng_;
};

} // namespace linklab
