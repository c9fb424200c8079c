#include "otflow/cost.hpp"

#include <algorithm>
#include <stdexcept>

#include "otflow/knn.hpp"
#include "otflow/parallel.hpp"

namespace otflow {

CostMatrix::CostMatrix(Eigen::MatrixXd values, GateMask gated, double gate_radius)
    : values_(std::move(values)), gated_(std::move(gated)), gate_radius_(gate_radius) {
  if (values_.rows() != values_.cols() || values_.rows() < 1) {
    throw std::invalid_argument("CostMatrix: must be square and non-empty");
  }
  if (gated_.rows() != values_.rows() || gated_.cols() != values_.cols()) {
    throw std::invalid_argument("CostMatrix: gate mask shape must match values");
  }
  for (Index i = 0; i < values_.rows(); ++i) {
    for (Index j = 0; j < values_.cols(); ++j) {
      if (!gated_(i, j) && !(std::isfinite(values_(i, j)) && values_(i, j) >= 0.0)) {
        throw std::invalid_argument("CostMatrix: ungated entries must be finite and >= 0");
      }
    }
  }
}

CostMatrix CostMatrix::dense(Eigen::MatrixXd values) {
  GateMask none = GateMask::Constant(values.rows(), values.cols(), false);
  return CostMatrix(std::move(values), std::move(none),
                    std::numeric_limits<double>::infinity());
}

CostMatrix build_cost(const FeatureMatrix& fp, const FeatureMatrix& fq, const PointCloud& p,
                      const PointCloud& q, double d_max) {
  if (fp.dim() != fq.dim()) {
    throw std::invalid_argument("build_cost: feature dimensions must match");
  }
  if (fp.size() != p.size() || fq.size() != q.size()) {
    throw std::invalid_argument("build_cost: feature rows must align with cloud points");
  }
  if (p.size() != q.size()) {
    throw std::invalid_argument("build_cost: clouds must have equal size");
  }
  if (!(d_max > 0.0)) {
    throw std::invalid_argument("build_cost: d_max must be positive");
  }
  const Index n = p.size();
  const double gate_sq = d_max * d_max;

  Eigen::VectorXd norm_p(n);
  Eigen::VectorXd norm_q(n);
  for (Index i = 0; i < n; ++i) {
    norm_p(i) = fp.data().row(i).norm();
    norm_q(i) = fq.data().row(i).norm();
  }

  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
  CostMatrix::GateMask gated(n, n);
  parallel_for(0, n, [&](Index i) {
    const Vec3 pi = p.point(i);
    for (Index j = 0; j < n; ++j) {
      if (squared_distance(pi, q.point(j)) > gate_sq) {
        gated(i, j) = true;
        continue;
      }
      gated(i, j) = false;
      const double cosine = fp.data().row(i).dot(fq.data().row(j)) / (norm_p(i) * norm_q(j));
      values(i, j) = std::clamp(1.0 - cosine, 0.0, 2.0);
    }
  });
  return CostMatrix(std::move(values), std::move(gated), d_max);
}

}  // namespace otflow
