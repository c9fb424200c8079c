#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otflow/types.hpp"

namespace otflow::cli {

struct SynthArgs {
  std::string regime = "perfect";
  Index n = 128;
  std::uint64_t seed = 0;
  double rho = 0.0;
  Index pool = 0;  // 0 = four times n
  double max_rotation_deg = 15.0;
  double max_translation = 1.0;
  double jitter_sigma = 0.01;
  double cube_extent = 10.0;
  std::string out_dir;
  std::string name = "scene";
};

struct EstimateArgs {
  std::string scene_manifest;
  std::string features = "handcrafted";
  double epsilon = 0.03;
  double power = 0.5;
  bool has_lambda = false;
  double lambda = 0.0;
  bool mass_conserving = false;
  bool flot0 = false;
  bool no_floor = false;
  int k = 3;
  double gate_radius = 10.0;
  double mass_threshold = 1e-12;
  int refine_rounds = 0;
  Index refine_neighbors = 32;
  Index feature_neighbors = 32;
  std::string flow_out;
  std::string report_out;
};

struct EvalArgs {
  std::string est_path;
  std::string truth_path;
  std::string mask_path;
  std::string report_out;  // empty = stdout only
};

struct CalibrateArgs {
  std::string scene_dir;
  std::string features = "handcrafted";
  std::vector<double> epsilons;  // empty = default grid
  std::vector<double> powers;
  std::vector<int> ks;
  Index feature_neighbors = 32;
  double gate_radius = 10.0;
  std::string report_out;  // empty = stdout only
  std::string table_out;   // empty = no CSV
};

struct BenchArgs {
  std::vector<Index> sizes = {512, 1024, 2048};
  std::vector<int> ks = {1, 3, 5};
  int repeats = 5;
  double epsilon = 0.03;
  double power = 0.5;
  std::uint64_t seed = 0;
  std::string out_csv;  // empty = stdout
};

int run_synth(const SynthArgs& args);
int run_estimate(const EstimateArgs& args);
int run_eval(const EvalArgs& args);
int run_calibrate(const CalibrateArgs& args);
int run_bench(const BenchArgs& args);

}  // namespace otflow::cli
