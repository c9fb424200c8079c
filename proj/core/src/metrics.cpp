#include "otflow/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "otflow/errors.hpp"

namespace otflow {

EvalReport evaluate(const FlowField& f_est, const FlowField& f_gt, const ValidityMask& mask) {
  const Index n = f_est.size();
  if (f_gt.size() != n || mask.size() != n) {
    throw std::invalid_argument("evaluate: flows and mask must agree in length");
  }
  Index evaluated = 0;
  Index strict = 0;
  Index relaxed = 0;
  Index outliers = 0;
  double epe_sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (!mask[i]) {
      continue;
    }
    ++evaluated;
    const double epe_i = (f_est.vector(i) - f_gt.vector(i)).norm();
    const double gt_norm = f_gt.vector(i).norm();
    const double ratio = gt_norm == 0.0
                             ? (epe_i == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                             : epe_i / gt_norm;
    epe_sum += epe_i;
    if (epe_i < kAccStrictThreshold || ratio < kAccStrictThreshold) {
      ++strict;
    }
    if (epe_i < kAccRelaxedThreshold || ratio < kAccRelaxedThreshold) {
      ++relaxed;
    }
    if (epe_i > kOutlierEpeThreshold || ratio > kOutlierRatioThreshold) {
      ++outliers;
    }
  }
  if (evaluated == 0) {
    throw EmptyEvaluationError();
  }
  const double denom = static_cast<double>(evaluated);
  EvalReport report;
  report.epe = epe_sum / denom;
  report.acc_strict = 100.0 * static_cast<double>(strict) / denom;
  report.acc_relaxed = 100.0 * static_cast<double>(relaxed) / denom;
  report.outliers = 100.0 * static_cast<double>(outliers) / denom;
  report.evaluated_points = evaluated;
  return report;
}

}  // namespace otflow
