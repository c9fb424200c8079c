#pragma once

#include "otflow/types.hpp"

namespace otflow {

/// Scores over masked-in points. Percentages are in [0, 100], matching how
/// scene-flow results are usually tabulated; acc_strict <= acc_relaxed
/// always, since the strict criterion implies the relaxed one pointwise.
struct EvalReport {
  double epe = 0.0;          // mean end-point error (meters)
  double acc_strict = 0.0;   // % with EPE_i < 0.05 or EPE_i/|gt_i| < 0.05
  double acc_relaxed = 0.0;  // % with EPE_i < 0.1  or EPE_i/|gt_i| < 0.1
  double outliers = 0.0;     // % with EPE_i > 0.3  or EPE_i/|gt_i| > 0.1
  Index evaluated_points = 0;
};

/// Per-point thresholds behind EvalReport.
inline constexpr double kAccStrictThreshold = 0.05;
inline constexpr double kAccRelaxedThreshold = 0.1;
inline constexpr double kOutlierEpeThreshold = 0.3;
inline constexpr double kOutlierRatioThreshold = 0.1;

/// Evaluates the estimate against ground truth over masked-in points only.
/// A zero-magnitude ground-truth vector makes the relative term 0 when the
/// estimate is exact and +infinity otherwise, so static points are judged by
/// the absolute thresholds.
///
/// Throws std::invalid_argument on length mismatch and EmptyEvaluationError
/// when the mask selects no points.
EvalReport evaluate(const FlowField& f_est, const FlowField& f_gt, const ValidityMask& mask);

}  // namespace otflow
