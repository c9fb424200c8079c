#include "otflow/features.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

#include "otflow/knn.hpp"
#include "otflow/parallel.hpp"

namespace otflow {

FeatureMatrix::FeatureMatrix(Eigen::MatrixXd rows) : rows_(std::move(rows)) {
  if (rows_.rows() < 1 || rows_.cols() < 1) {
    throw std::invalid_argument("FeatureMatrix: must be non-empty");
  }
  if (!rows_.allFinite()) {
    throw std::invalid_argument("FeatureMatrix: entries must be finite");
  }
  for (Index i = 0; i < rows_.rows(); ++i) {
    if (rows_.row(i).norm() <= 0.0) {
      throw std::invalid_argument("FeatureMatrix: every row must have positive norm");
    }
  }
}

FeatureMatrix handcrafted_features(const PointCloud& cloud, Index m) {
  const Index n = cloud.size();
  if (m > n) {
    throw std::invalid_argument("handcrafted_features: m must not exceed cloud size");
  }
  const NeighborTable neighbors = knn(cloud, cloud, m);
  const Vec3 centroid = cloud.data().colwise().mean();

  Eigen::MatrixXd rows(n, 9);
  parallel_for(0, n, [&](Index i) {
    const Vec3 pi = cloud.point(i);

    Vec3 local_mean = Vec3::Zero();
    for (Index k = 0; k < m; ++k) {
      local_mean += cloud.point(neighbors.neighbor(i, k));
    }
    local_mean /= static_cast<double>(m);

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (Index k = 0; k < m; ++k) {
      const Vec3 d = cloud.point(neighbors.neighbor(i, k)) - local_mean;
      cov += d * d.transpose();
    }
    cov /= static_cast<double>(m);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
    Vec3 eig = solver.eigenvalues().reverse();  // descending
    const double total = eig.sum();
    if (total > 0.0) {
      eig /= total;
    } else {
      eig.setZero();  // degenerate neighborhood (all points coincident)
    }

    rows.row(i).segment<3>(0) = (pi - centroid).transpose();
    rows.row(i).segment<3>(3) = eig.transpose();
    rows.row(i).segment<3>(6) = (local_mean - pi).transpose();
    if ((rows.row(i).array() == 0.0).all()) {
      rows(i, 0) = 1e-9;
    }
  });
  return FeatureMatrix(std::move(rows));
}

std::pair<FeatureMatrix, FeatureMatrix> oracle_features(const ScenePair& pair) {
  if (!pair.permutation().has_value()) {
    throw std::invalid_argument("oracle_features: scene pair carries no permutation");
  }
  const Index n = pair.size();
  const auto& perm = *pair.permutation();

  Eigen::MatrixXd fp = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd fq = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    fq(perm[static_cast<std::size_t>(i)], i) = 1.0;  // target perm[i] is the one-hot of i
  }
  return {FeatureMatrix(std::move(fp)), FeatureMatrix(std::move(fq))};
}

}  // namespace otflow
