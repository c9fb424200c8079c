#pragma once

#include <Eigen/Core>

#include "otflow/types.hpp"

namespace otflow {

/// Squared Euclidean distance, evaluated as dx*dx + dy*dy + dz*dz. Every
/// distance computation in the library funnels through here so gating
/// decisions and distance matrices agree bitwise.
inline double squared_distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x() - b.x();
  const double dy = a.y() - b.y();
  const double dz = a.z() - b.z();
  return dx * dx + dy * dy + dz * dz;
}

/// Exact m-nearest-neighbor search of `queries` into `cloud`. Row i of the
/// result holds the indices of the m cloud points closest to queries[i],
/// nearest first; ties broken by lowest index. A query coincident with a
/// cloud point includes that point.
///
/// Throws std::invalid_argument unless 1 <= m <= cloud.size().
NeighborTable knn(const PointCloud& cloud, const PointCloud& queries, Index m);

/// Matrix of squared distances: entry (i, j) = |p_i - q_j|^2.
/// pairwise_sq_dist(p, q) is exactly the transpose of pairwise_sq_dist(q, p).
Eigen::MatrixXd pairwise_sq_dist(const PointCloud& p, const PointCloud& q);

}  // namespace otflow
