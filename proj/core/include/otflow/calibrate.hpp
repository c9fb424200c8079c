#pragma once

#include <vector>

#include "otflow/features.hpp"
#include "otflow/metrics.hpp"
#include "otflow/types.hpp"

namespace otflow {

/// Candidate (epsilon, power, K) triples swept by grid_search. The default
/// grid brackets every parameter readout reported for the trained model.
struct CalibrationGrid {
  std::vector<double> epsilons;
  std::vector<double> powers;
  std::vector<int> ks;

  static CalibrationGrid defaults() {
    return {{0.03, 0.1, 0.3, 1.0}, {0.0, 0.25, 0.5, 0.75, 0.9, 1.0}, {1, 3, 5}};
  }
};

/// EvalReport fields averaged over the validation scenes.
struct MeanScores {
  double epe = 0.0;
  double acc_strict = 0.0;
  double acc_relaxed = 0.0;
  double outliers = 0.0;
  double evaluated_points = 0.0;
};

struct CandidateScore {
  double epsilon = 0.0;
  double power = 0.0;
  int k = 0;
  MeanScores mean;
};

/// Winner plus the full sweep table. The winner minimizes mean EPE; exact
/// ties fall to smaller K, then smaller power, then smaller epsilon.
struct CalibrationResult {
  CandidateScore best;
  std::vector<CandidateScore> table;
};

/// Extra knobs for the sweep; defaults match the estimation pipeline.
struct CalibrationOptions {
  Index feature_neighbors = 32;
  double gate_radius = 10.0;
  double mass_threshold = 1e-12;
  bool enforce_epsilon_floor = true;
};

/// Runs the full pipeline (features -> cost -> sinkhorn -> interpolation,
/// no refinement) for every grid candidate on every scene, evaluates against
/// the masked ground truth, and averages. Deterministic for fixed inputs.
///
/// Throws std::invalid_argument on an empty grid or scene list.
CalibrationResult grid_search(const std::vector<ScenePair>& scenes, FeatureMode mode,
                              const CalibrationGrid& grid,
                              const CalibrationOptions& options = {});

}  // namespace otflow
