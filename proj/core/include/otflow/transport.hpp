#pragma once

#include <Eigen/Core>

#include <utility>

#include "otflow/cost.hpp"
#include "otflow/types.hpp"

namespace otflow {

/// Parameters of the relaxed entropic transport solve.
///
/// The mass relaxation enters the iteration only through the exponent
/// power = lambda / (lambda + epsilon); power 0 removes the marginal
/// scaling entirely (the FLOT0 limit) and power 1 enforces balanced
/// marginals. Instances are parameterized by the power directly, with
/// factories for callers that think in lambda.
///
/// epsilon is floored at epsilon_floor (default 0.03) before use; the floor
/// can be disabled for oracle-limit experiments.
class OtParams {
 public:
  OtParams() : OtParams(kDefaultEpsilon, kDefaultPower, kDefaultIterations) {}

  static OtParams from_power(double epsilon, double power, int iterations);
  static OtParams from_lambda(double epsilon, double lambda, int iterations);
  /// The lambda -> infinity limit: power is exactly 1.
  static OtParams mass_conserving(double epsilon, int iterations);

  /// Copy with the epsilon floor disabled (test and calibration use only).
  OtParams without_floor() const;

  double epsilon() const { return epsilon_; }
  double effective_epsilon() const;
  double power() const { return power_; }
  int iterations() const { return iterations_; }
  double epsilon_floor() const { return epsilon_floor_; }
  bool floor_enabled() const { return floor_enabled_; }

  static constexpr double kDefaultEpsilon = 0.03;
  static constexpr double kDefaultPower = 0.5;
  static constexpr int kDefaultIterations = 3;
  static constexpr double kDefaultEpsilonFloor = 0.03;

 private:
  OtParams(double epsilon, double power, int iterations);

  double epsilon_;
  double power_;
  int iterations_;
  double epsilon_floor_ = kDefaultEpsilonFloor;
  bool floor_enabled_ = true;
};

/// Non-negative transport masses between two clouds of equal size, plus the
/// parameters that produced them. Entries gated in the cost are exactly 0.
class TransportPlan {
 public:
  TransportPlan(Eigen::MatrixXd masses, OtParams params)
      : masses_(std::move(masses)), params_(params) {}

  Index size() const { return masses_.rows(); }
  double mass(Index i, Index j) const { return masses_(i, j); }
  const Eigen::MatrixXd& masses() const { return masses_; }
  const OtParams& params() const { return params_; }

 private:
  Eigen::MatrixXd masses_;
  OtParams params_;
};

/// K unrolled Sinkhorn iterations on the relaxed transport problem:
///
///   a <- 1/n;  U <- exp(-C / eps) with gated entries exactly 0
///   repeat K times:
///     b <- [(1/n) ./ (U^T a)]^power
///     a <- [(1/n) ./ (U b)]^power
///   T = diag(a) U diag(b)
///
/// Exponent arguments are clamped to [-700, 700]; a division whose
/// denominator is below 1e-300 yields 0 for that entry so mass vanishes
/// instead of exploding. K = 0 returns the unscaled kernel U.
///
/// Throws DegenerateCostError if any row or column of C is entirely gated.
TransportPlan sinkhorn(const CostMatrix& cost, const OtParams& params);

/// The FLOT0 closed form T = exp(-C / epsilon): the kernel itself, no
/// marginal scaling. Bitwise equal to sinkhorn with power 0.
/// Throws std::invalid_argument unless epsilon > 0.
TransportPlan flot0_plan(const CostMatrix& cost, double epsilon);

/// Exact row and column sums of the plan.
std::pair<Eigen::VectorXd, Eigen::VectorXd> marginals(const TransportPlan& plan);

}  // namespace otflow
