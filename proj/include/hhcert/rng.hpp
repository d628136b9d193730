#pragma once

#include <cstdint>
#include <random>

namespace hhcert {

// Uniform double in [0, 1) from the top 53 bits of a 64-bit word.
// Hand-rolled instead of std::uniform_real_distribution so that streams
// are bit-identical across standard library implementations.
inline double u64_to_unit_double(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Deterministic engine for seeded sweeps.
class UniformRng {
public:
    explicit UniformRng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return u64_to_unit_double(eng_()); }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 eng_;
};

// splitmix64: tiny counter-based generator used to derive independent
// per-case streams from small integer labels.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform() { return u64_to_unit_double(next()); }

private:
    std::uint64_t state_;
};

}  // namespace hhcert
