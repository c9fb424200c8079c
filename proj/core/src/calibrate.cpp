#include "otflow/calibrate.hpp"

#include <stdexcept>
#include <tuple>

#include "otflow/cost.hpp"
#include "otflow/flow.hpp"
#include "otflow/transport.hpp"

namespace otflow {

CalibrationResult grid_search(const std::vector<ScenePair>& scenes, FeatureMode mode,
                              const CalibrationGrid& grid, const CalibrationOptions& options) {
  if (scenes.empty()) {
    throw std::invalid_argument("grid_search: scene list must be non-empty");
  }
  if (grid.epsilons.empty() || grid.powers.empty() || grid.ks.empty()) {
    throw std::invalid_argument("grid_search: grid must have at least one candidate per axis");
  }

  // Features and costs do not depend on the candidate, so build them once.
  std::vector<CostMatrix> costs;
  costs.reserve(scenes.size());
  for (const ScenePair& scene : scenes) {
    const auto [fp, fq] = mode == FeatureMode::kOracle
                              ? oracle_features(scene)
                              : std::pair{handcrafted_features(scene.source(),
                                                               options.feature_neighbors),
                                          handcrafted_features(scene.target(),
                                                               options.feature_neighbors)};
    costs.push_back(
        build_cost(fp, fq, scene.source(), scene.target(), options.gate_radius));
  }

  CalibrationResult result;
  bool have_best = false;
  for (double epsilon : grid.epsilons) {
    for (double power : grid.powers) {
      for (int k : grid.ks) {
        OtParams params = OtParams::from_power(epsilon, power, k);
        if (!options.enforce_epsilon_floor) {
          params = params.without_floor();
        }
        MeanScores mean;
        for (std::size_t s = 0; s < scenes.size(); ++s) {
          const TransportPlan plan = sinkhorn(costs[s], params);
          const FlowEstimate estimate = interpolate_flow(
              plan, scenes[s].source(), scenes[s].target(), options.mass_threshold);
          const EvalReport report =
              evaluate(estimate.raw, scenes[s].truth(), scenes[s].mask());
          mean.epe += report.epe;
          mean.acc_strict += report.acc_strict;
          mean.acc_relaxed += report.acc_relaxed;
          mean.outliers += report.outliers;
          mean.evaluated_points += static_cast<double>(report.evaluated_points);
        }
        const double count = static_cast<double>(scenes.size());
        mean.epe /= count;
        mean.acc_strict /= count;
        mean.acc_relaxed /= count;
        mean.outliers /= count;
        mean.evaluated_points /= count;

        result.table.push_back({epsilon, power, k, mean});
        const CandidateScore& candidate = result.table.back();
        auto rank = [](const CandidateScore& c) {
          return std::make_tuple(c.mean.epe, c.k, c.power, c.epsilon);
        };
        if (!have_best || rank(candidate) < rank(result.best)) {
          result.best = candidate;
          have_best = true;
        }
      }
    }
  }
  return result;
}

}  // namespace otflow
