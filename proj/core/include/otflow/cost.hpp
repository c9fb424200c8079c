#pragma once

#include <Eigen/Core>

#include <limits>

#include "otflow/features.hpp"
#include "otflow/types.hpp"

namespace otflow {

/// Square matrix of non-negative transport costs with a hard distance gate.
/// Gated entries behave as +infinity: downstream kernels assign them exactly
/// zero mass. The gate is stored as an explicit flag per entry rather than an
/// IEEE infinity so exponentiation never sees a non-finite input.
class CostMatrix {
 public:
  using GateMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

  /// `values` must be square, finite and non-negative where not gated; the
  /// stored value of a gated entry is ignored. `gate_radius` records the
  /// distance (meters) beyond which entries were gated.
  CostMatrix(Eigen::MatrixXd values, GateMask gated, double gate_radius);

  /// Ungated matrix for synthetic costs; gate radius reported as +infinity.
  static CostMatrix dense(Eigen::MatrixXd values);

  Index size() const { return values_.rows(); }
  bool gated(Index i, Index j) const { return gated_(i, j); }
  double value(Index i, Index j) const { return values_(i, j); }
  double gate_radius() const { return gate_radius_; }

  const Eigen::MatrixXd& values() const { return values_; }
  const GateMask& gate_mask() const { return gated_; }

 private:
  Eigen::MatrixXd values_;
  GateMask gated_;
  double gate_radius_;
};

/// Gated cosine-distance cost: entry (i, j) is 1 - cos(fp_i, fq_j), clamped
/// into [0, 2] to absorb rounding, when |p_i - q_j| <= d_max; gated
/// otherwise. Feature rows and clouds must agree in length, and the two
/// feature matrices must share one dimension.
CostMatrix build_cost(const FeatureMatrix& fp, const FeatureMatrix& fq, const PointCloud& p,
                      const PointCloud& q, double d_max);

/// Default gate radius (meters) used by the pipeline.
inline constexpr double kDefaultGateRadius = 10.0;

}  // namespace otflow
