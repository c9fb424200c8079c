#include "otflow/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace otflow {

namespace {

void require_finite(const Coords& m, const char* what) {
  if (m.rows() < 1) {
    throw std::invalid_argument(std::string(what) + ": must contain at least one entry");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": entries must be finite");
  }
}

}  // namespace

PointCloud::PointCloud(Coords points) : points_(std::move(points)) {
  require_finite(points_, "PointCloud");
}

FlowField::FlowField(Coords vectors) : vectors_(std::move(vectors)) {
  require_finite(vectors_, "FlowField");
}

FlowField FlowField::zeros(Index n) { return FlowField(Coords::Zero(n, 3)); }

ValidityMask::ValidityMask(std::vector<bool> flags) : flags_(std::move(flags)) {
  if (flags_.empty()) {
    throw std::invalid_argument("ValidityMask: must contain at least one flag");
  }
}

Index ValidityMask::count_true() const {
  return static_cast<Index>(std::count(flags_.begin(), flags_.end(), true));
}

ValidityMask ValidityMask::all_true(Index n) {
  return ValidityMask(std::vector<bool>(static_cast<std::size_t>(n), true));
}

ScenePair::ScenePair(PointCloud source, PointCloud target, FlowField truth, ValidityMask mask,
                     std::optional<std::vector<Index>> permutation)
    : source_(std::move(source)),
      target_(std::move(target)),
      truth_(std::move(truth)),
      mask_(std::move(mask)),
      permutation_(std::move(permutation)) {
  const Index n = source_.size();
  if (target_.size() != n || truth_.size() != n || mask_.size() != n) {
    throw std::invalid_argument("ScenePair: source, target, truth and mask sizes must match");
  }
  if (permutation_.has_value()) {
    const auto& perm = *permutation_;
    if (static_cast<Index>(perm.size()) != n) {
      throw std::invalid_argument("ScenePair: permutation length must equal point count");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Index i = 0; i < n; ++i) {
      const Index j = perm[static_cast<std::size_t>(i)];
      if (j < 0 || j >= n || seen[static_cast<std::size_t>(j)]) {
        throw std::invalid_argument("ScenePair: permutation is not a bijection on {0..n-1}");
      }
      seen[static_cast<std::size_t>(j)] = true;
      // Bitwise, not approximate: the perfect-world identity must hold exactly.
      for (int c = 0; c < 3; ++c) {
        if (source_.data()(i, c) + truth_.data()(i, c) != target_.data()(j, c)) {
          throw std::invalid_argument(
              "ScenePair: source + truth must equal the permuted target exactly");
        }
      }
    }
  }
}

}  // namespace otflow
