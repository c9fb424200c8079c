#include "otflow/pipeline.hpp"

#include <chrono>
#include <utility>

namespace otflow {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

PipelineResult run_pipeline(const ScenePair& scene, const PipelineConfig& config) {
  const auto t_total = Clock::now();

  auto t = Clock::now();
  std::pair<FeatureMatrix, FeatureMatrix> features = [&] {
    if (config.features == FeatureMode::kOracle) {
      return oracle_features(scene);
    }
    return std::pair{handcrafted_features(scene.source(), config.feature_neighbors),
                     handcrafted_features(scene.target(), config.feature_neighbors)};
  }();
  StageTimings timings;
  timings.features_ms = ms_since(t);

  t = Clock::now();
  const CostMatrix cost = build_cost(features.first, features.second, scene.source(),
                                     scene.target(), config.gate_radius);
  timings.cost_ms = ms_since(t);

  t = Clock::now();
  const TransportPlan plan = config.use_flot0
                                 ? flot0_plan(cost, config.ot.effective_epsilon())
                                 : sinkhorn(cost, config.ot);
  timings.transport_ms = ms_since(t);

  t = Clock::now();
  FlowEstimate estimate =
      interpolate_flow(plan, scene.source(), scene.target(), config.mass_threshold);
  timings.interpolate_ms = ms_since(t);

  if (config.refine_rounds > 0) {
    t = Clock::now();
    estimate.refined = smooth_refine(estimate.raw, scene.source(), config.refine_neighbors,
                                     config.refine_rounds);
    timings.refine_ms = ms_since(t);
  }

  const auto [row_sums, col_sums] = marginals(plan);
  const double target_mass = 1.0 / static_cast<double>(scene.size());
  PipelineResult result{std::move(estimate), 0.0, 0.0, timings};
  result.row_residual_max = (row_sums.array() - target_mass).abs().maxCoeff();
  result.col_residual_max = (col_sums.array() - target_mass).abs().maxCoeff();
  result.timings.total_ms = ms_since(t_total);
  return result;
}

}  // namespace otflow
