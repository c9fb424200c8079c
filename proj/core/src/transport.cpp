#include "otflow/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "otflow/errors.hpp"

namespace otflow {

namespace {

constexpr double kExpClamp = 700.0;
constexpr double kDivisionFloor = 1e-300;

double clamped_exp(double x) { return std::exp(std::clamp(x, -kExpClamp, kExpClamp)); }

/// Gibbs kernel exp(-C/eps) with gated entries hard zero. Shared by the
/// iterated and closed-form paths so they agree bitwise.
Eigen::MatrixXd gibbs_kernel(const CostMatrix& cost, double eps) {
  const Index n = cost.size();
  Eigen::MatrixXd kernel(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      kernel(i, j) = cost.gated(i, j) ? 0.0 : clamped_exp(-cost.value(i, j) / eps);
    }
  }
  return kernel;
}

void require_non_degenerate(const CostMatrix& cost) {
  const Index n = cost.size();
  std::vector<Index> bad_rows;
  std::vector<Index> bad_cols;
  for (Index i = 0; i < n; ++i) {
    bool row_ok = false;
    for (Index j = 0; j < n && !row_ok; ++j) {
      row_ok = !cost.gated(i, j);
    }
    if (!row_ok) {
      bad_rows.push_back(i);
    }
  }
  for (Index j = 0; j < n; ++j) {
    bool col_ok = false;
    for (Index i = 0; i < n && !col_ok; ++i) {
      col_ok = !cost.gated(i, j);
    }
    if (!col_ok) {
      bad_cols.push_back(j);
    }
  }
  if (!bad_rows.empty() || !bad_cols.empty()) {
    throw DegenerateCostError(std::move(bad_rows), std::move(bad_cols));
  }
}

/// [(1/n) ./ denom]^power elementwise with the division-underflow rule.
Eigen::VectorXd scaling_update(const Eigen::VectorXd& denom, double inv_n, double power) {
  Eigen::VectorXd out(denom.size());
  for (Index i = 0; i < denom.size(); ++i) {
    const double ratio = denom(i) < kDivisionFloor ? 0.0 : inv_n / denom(i);
    out(i) = std::pow(ratio, power);
  }
  return out;
}

}  // namespace

OtParams::OtParams(double epsilon, double power, int iterations)
    : epsilon_(epsilon), power_(power), iterations_(iterations) {
  if (!(epsilon_ > 0.0)) {
    throw std::invalid_argument("OtParams: epsilon must be positive");
  }
  if (!(power_ >= 0.0 && power_ <= 1.0)) {
    throw std::invalid_argument("OtParams: power must lie in [0, 1]");
  }
  if (iterations_ < 0) {
    throw std::invalid_argument("OtParams: iteration count must be non-negative");
  }
}

OtParams OtParams::from_power(double epsilon, double power, int iterations) {
  return OtParams(epsilon, power, iterations);
}

OtParams OtParams::from_lambda(double epsilon, double lambda, int iterations) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("OtParams: lambda must be finite and >= 0");
  }
  OtParams params(epsilon, 0.0, iterations);
  params.power_ = lambda / (lambda + params.effective_epsilon());
  return params;
}

OtParams OtParams::mass_conserving(double epsilon, int iterations) {
  return OtParams(epsilon, 1.0, iterations);
}

OtParams OtParams::without_floor() const {
  OtParams copy = *this;
  copy.floor_enabled_ = false;
  return copy;
}

double OtParams::effective_epsilon() const {
  return floor_enabled_ ? std::max(epsilon_, epsilon_floor_) : epsilon_;
}

TransportPlan sinkhorn(const CostMatrix& cost, const OtParams& params) {
  require_non_degenerate(cost);
  const Index n = cost.size();
  const double eps = params.effective_epsilon();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double power = params.power();

  Eigen::MatrixXd kernel = gibbs_kernel(cost, eps);
  if (params.iterations() == 0) {
    return TransportPlan(std::move(kernel), params);
  }

  Eigen::VectorXd a = Eigen::VectorXd::Constant(n, inv_n);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(n);
  for (int k = 0; k < params.iterations(); ++k) {
    b = scaling_update(kernel.transpose() * a, inv_n, power);
    a = scaling_update(kernel * b, inv_n, power);
  }

  Eigen::MatrixXd masses(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      masses(i, j) = a(i) * kernel(i, j) * b(j);
    }
  }
  return TransportPlan(std::move(masses), params);
}

TransportPlan flot0_plan(const CostMatrix& cost, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("flot0_plan: epsilon must be positive");
  }
  // Record the parameters actually used; the floor is the caller's concern.
  const OtParams params = OtParams::from_power(epsilon, 0.0, 0).without_floor();
  return TransportPlan(gibbs_kernel(cost, epsilon), params);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> marginals(const TransportPlan& plan) {
  const Index n = plan.size();
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd col_sums = Eigen::VectorXd::Zero(n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double mass = plan.mass(i, j);
      row_sums(i) += mass;
      col_sums(j) += mass;
    }
  }
  return {std::move(row_sums), std::move(col_sums)};
}

}  // namespace otflow
