#pragma once

#include <optional>

#include "otflow/cost.hpp"
#include "otflow/features.hpp"
#include "otflow/flow.hpp"
#include "otflow/metrics.hpp"
#include "otflow/transport.hpp"
#include "otflow/types.hpp"

namespace otflow {

/// Everything needed to run features -> cost -> transport -> interpolation
/// on one scene pair.
struct PipelineConfig {
  FeatureMode features = FeatureMode::kHandcrafted;
  Index feature_neighbors = 32;
  double gate_radius = kDefaultGateRadius;
  OtParams ot;
  bool use_flot0 = false;  // closed-form kernel instead of iterated Sinkhorn
  double mass_threshold = kDefaultMassThreshold;
  int refine_rounds = 0;  // smoothing stand-in for the residual stage; off by default
  Index refine_neighbors = 32;
};

/// Wall-clock per stage, milliseconds.
struct StageTimings {
  double features_ms = 0.0;
  double cost_ms = 0.0;
  double transport_ms = 0.0;
  double interpolate_ms = 0.0;
  double refine_ms = 0.0;
  double total_ms = 0.0;
};

struct PipelineResult {
  FlowEstimate estimate;
  double row_residual_max = 0.0;  // max_i |rowsum_i - 1/n|
  double col_residual_max = 0.0;  // max_j |colsum_j - 1/n|
  StageTimings timings;
};

/// Runs the full estimation pipeline on one scene. Oracle features require
/// the scene to carry a permutation. Errors from the stages (invalid
/// arguments, DegenerateCostError) propagate unchanged.
PipelineResult run_pipeline(const ScenePair& scene, const PipelineConfig& config);

}  // namespace otflow
