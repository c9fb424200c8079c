#pragma once

#include <optional>

#include "otflow/cost.hpp"
#include "otflow/transport.hpp"
#include "otflow/types.hpp"

namespace otflow {

/// Flow read off a transport plan, before and (optionally) after smoothing.
/// fallback_count is the number of source points whose plan row carried no
/// usable mass and therefore received zero flow.
struct FlowEstimate {
  FlowField raw;
  std::optional<FlowField> refined;
  Index fallback_count = 0;

  const FlowField& best() const { return refined.has_value() ? *refined : raw; }
};

/// Mass threshold below which a plan row falls back to zero flow.
inline constexpr double kDefaultMassThreshold = 1e-12;

/// Barycentric flow readout: each source point moves toward the plan-weighted
/// barycentre of the target cloud,
///   f_i = (sum_j T_ij q_j) / (sum_j T_ij) - p_i,
/// or zero (counted) when the row mass is at most tau.
FlowEstimate interpolate_flow(const TransportPlan& plan, const PointCloud& p, const PointCloud& q,
                              double tau = kDefaultMassThreshold);

/// FLOT0 attention form computed directly from the cost:
///   f_i = sum_j exp(-C_ij/eps) (q_j - p_i) / sum_j exp(-C_ij/eps),
/// gated terms contributing nothing. Agrees with
/// interpolate_flow(flot0_plan(cost, eps), p, q, tau) to 1e-12 per coordinate.
FlowEstimate attention_flow(const CostMatrix& cost, double epsilon, const PointCloud& p,
                            const PointCloud& q, double tau = kDefaultMassThreshold);

/// Non-learned smoother standing in for the residual refinement stage: each
/// round replaces every vector by the mean flow over the m nearest spatial
/// neighbors of its point in p (self included). rounds = 0 is the identity.
/// Off by default in the pipeline.
FlowField smooth_refine(const FlowField& raw, const PointCloud& p, Index m, int rounds);

/// Masked l1 training objective for a single example:
///   (1/3) * sum over masked-in points of |f_est_i - f_gt_i|_1.
double masked_l1(const FlowField& f_est, const FlowField& f_gt, const ValidityMask& mask);

}  // namespace otflow
