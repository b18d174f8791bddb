#pragma once

#include <cstdint>
#include <random>

namespace dmgx {

/// Seeded RNG with generator-level determinism: draws go through raw 64-bit
/// output instead of std distributions, so identical seeds give identical
/// streams on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0,1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) via rejection-free scaling; bound > 0.
    int next_below(int bound) { return static_cast<int>(next_double() * bound); }

    bool flip(double p) { return next_double() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace dmgx
