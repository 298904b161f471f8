#pragma once

#include <cstdint>

namespace cubesim {

/// Deterministic 64-bit PRNG (splitmix64). Used instead of <random>
/// distributions so that seeded outputs are bit-identical across platforms
/// and standard library versions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Derive an independent stream for a subcomponent.
    Rng split(std::uint64_t stream) const {
        Rng r(state_ ^ (0xA0761D6478BD642FULL * (stream + 1)));
        r.next_u64();
        return r;
    }

  private:
    std::uint64_t state_;
};

} // namespace cubesim
