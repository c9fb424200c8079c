#pragma once

#include <Eigen/Core>

#include <utility>

#include "otflow/types.hpp"

namespace otflow {

/// Which per-point descriptor feeds the cost matrix.
enum class FeatureMode {
  kHandcrafted,  // geometric descriptor computed from the cloud alone
  kOracle,       // one-hot correspondence indicators; needs a permutation
};

/// Per-point descriptors of one cloud; row i describes point i. Every row
/// has strictly positive norm so the cosine distance is always defined.
class FeatureMatrix {
 public:
  /// Throws std::invalid_argument on non-finite entries or a zero-norm row.
  explicit FeatureMatrix(Eigen::MatrixXd rows);

  Index size() const { return rows_.rows(); }
  Index dim() const { return rows_.cols(); }
  const Eigen::MatrixXd& data() const { return rows_; }

 private:
  Eigen::MatrixXd rows_;
};

/// Deterministic 9-dimensional geometric descriptor, one row per point:
///   [0..2] the point centered on the cloud centroid,
///   [3..5] eigenvalues of its m-neighborhood covariance, sorted descending
///          and normalized to sum 1 (all zeros for a degenerate neighborhood),
///   [6..8] offset from the point to its neighborhood centroid.
/// A row that would be exactly zero gets 1e-9 added to its first slot to
/// keep the positive-norm invariant.
///
/// Throws std::invalid_argument if m > cloud.size().
FeatureMatrix handcrafted_features(const PointCloud& cloud, Index m = 32);

/// Correspondence-revealing descriptors for a perfect-world pair: source
/// point i gets the one-hot vector e_i, target point j gets e_{perm^-1(j)},
/// so matching pairs have cosine distance 0 and all others 1.
///
/// Throws std::invalid_argument if the pair carries no permutation.
std::pair<FeatureMatrix, FeatureMatrix> oracle_features(const ScenePair& pair);

}  // namespace otflow
