#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace otflow {

using Index = Eigen::Index;
using Vec3 = Eigen::Vector3d;

/// n x 3 block of xyz coordinates or displacements (meters).
using Coords = Eigen::Matrix<double, Eigen::Dynamic, 3>;

/// Ordered set of 3D points. Point order is significant and preserved by
/// every operation in this library. Immutable after construction.
class PointCloud {
 public:
  /// Throws std::invalid_argument if empty or any coordinate is non-finite.
  explicit PointCloud(Coords points);

  Index size() const { return points_.rows(); }
  Vec3 point(Index i) const { return points_.row(i); }
  const Coords& data() const { return points_; }

 private:
  Coords points_;
};

/// Per-point displacement vectors, aligned index-for-index with a PointCloud.
class FlowField {
 public:
  /// Throws std::invalid_argument if empty or any entry is non-finite.
  explicit FlowField(Coords vectors);

  Index size() const { return vectors_.rows(); }
  Vec3 vector(Index i) const { return vectors_.row(i); }
  const Coords& data() const { return vectors_; }

  static FlowField zeros(Index n);

 private:
  Coords vectors_;
};

/// Per-point validity flags; true means the flow at that point is observable.
class ValidityMask {
 public:
  explicit ValidityMask(std::vector<bool> flags);

  Index size() const { return static_cast<Index>(flags_.size()); }
  bool operator[](Index i) const { return flags_[static_cast<std::size_t>(i)]; }
  Index count_true() const;
  const std::vector<bool>& data() const { return flags_; }

  static ValidityMask all_true(Index n);

 private:
  std::vector<bool> flags_;
};

/// A source/target cloud pair with ground-truth flow, a validity mask, and an
/// optional exact correspondence: permutation[i] is the target index of
/// source point i.
///
/// When the permutation is present the pair is a "perfect world" instance and
/// construction verifies, bitwise, that source[i] + truth[i] == target[perm[i]]
/// for every i and that the permutation is a bijection.
class ScenePair {
 public:
  ScenePair(PointCloud source, PointCloud target, FlowField truth, ValidityMask mask,
            std::optional<std::vector<Index>> permutation = std::nullopt);

  const PointCloud& source() const { return source_; }
  const PointCloud& target() const { return target_; }
  const FlowField& truth() const { return truth_; }
  const ValidityMask& mask() const { return mask_; }
  const std::optional<std::vector<Index>>& permutation() const { return permutation_; }

  Index size() const { return source_.size(); }

 private:
  PointCloud source_;
  PointCloud target_;
  FlowField truth_;
  ValidityMask mask_;
  std::optional<std::vector<Index>> permutation_;
};

/// Fixed-width nearest-neighbor lookup: row i holds the indices of the m
/// cloud points nearest to query i, nearest first, ties broken by lowest
/// index. Built by knn(); treat as read-only.
class NeighborTable {
 public:
  using IndexMatrix = Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic>;

  explicit NeighborTable(IndexMatrix indices) : indices_(std::move(indices)) {}

  Index rows() const { return indices_.rows(); }
  Index neighbors_per_row() const { return indices_.cols(); }
  Index neighbor(Index row, Index k) const { return indices_(row, k); }
  const IndexMatrix& data() const { return indices_; }

 private:
  IndexMatrix indices_;
};

}  // namespace otflow
