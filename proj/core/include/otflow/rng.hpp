#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "otflow/types.hpp"

namespace otflow {

/// Deterministic random generator. The engine is a fixed-constant
/// mt19937_64 and every draw is derived from raw engine words with explicit
/// arithmetic, so identical seeds produce identical streams on every
/// platform. Distribution adapters from <random> are deliberately avoided;
/// their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n). n must be positive.
  Index uniform_index(Index n);

  /// Zero-mean Gaussian via Box-Muller (two uniforms per draw, no cached spare).
  double normal(double stddev);

  Vec3 uniform_in_cube(double half_extent);

  /// Uniformly distributed direction on the unit sphere.
  Vec3 unit_vector();

  /// Fisher-Yates permutation of {0..n-1}.
  std::vector<Index> permutation(Index n);

  /// k distinct indices drawn uniformly from {0..n-1}, in draw order.
  std::vector<Index> sample_without_replacement(Index n, Index k);

 private:
  std::mt19937_64 engine_;
};

/// Single factory used across the library so every consumer shares the same
/// fixed algorithm and constants.
inline Rng seeded_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace otflow
