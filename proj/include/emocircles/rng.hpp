#pragma once

#include <cstdint>
#include <random>

namespace emoc {

// Seeded random stream. Draws are produced from raw mt19937_64 output so that
// sequences are identical across standard library implementations (the
// std::*_distribution templates are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  // Unbiased integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 mix of (base, stream); used to give independent seeds to
// sub-runs (one per detected circle, one per scene, ...).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace emoc
