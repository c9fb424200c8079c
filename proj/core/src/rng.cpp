#include "otflow/rng.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace otflow {

Index Rng::uniform_index(Index n) {
  if (n <= 0) {
    throw std::invalid_argument("Rng::uniform_index: n must be positive");
  }
  // Modulo bias is below 2^-50 for desk-scale n.
  return static_cast<Index>(next_u64() % static_cast<std::uint64_t>(n));
}

double Rng::normal(double stddev) {
  const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  const double u2 = uniform();
  return stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec3 Rng::uniform_in_cube(double half_extent) {
  return Vec3(uniform(-half_extent, half_extent), uniform(-half_extent, half_extent),
              uniform(-half_extent, half_extent));
}

Vec3 Rng::unit_vector() {
  for (;;) {
    const Vec3 v(normal(1.0), normal(1.0), normal(1.0));
    const double norm = v.norm();
    if (norm > 1e-12) {
      return v / norm;
    }
  }
}

std::vector<Index> Rng::permutation(Index n) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = n - 1; i > 0; --i) {
    const Index j = uniform_index(i + 1);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

std::vector<Index> Rng::sample_without_replacement(Index n, Index k) {
  if (k < 0 || k > n) {
    throw std::invalid_argument("Rng::sample_without_replacement: need 0 <= k <= n");
  }
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  std::vector<Index> picked;
  picked.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    const Index j = i + uniform_index(n - i);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    picked.push_back(pool[static_cast<std::size_t>(i)]);
  }
  return picked;
}

}  // namespace otflow
