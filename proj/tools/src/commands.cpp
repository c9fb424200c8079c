#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "otflow/calibrate.hpp"
#include "otflow/cost.hpp"
#include "otflow/errors.hpp"
#include "otflow/io.hpp"
#include "otflow/metrics.hpp"
#include "otflow/pipeline.hpp"
#include "otflow/rng.hpp"
#include "otflow/synth.hpp"
#include "otflow/transport.hpp"

namespace otflow::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

FeatureMode parse_feature_mode(const std::string& name) {
  if (name == "handcrafted") {
    return FeatureMode::kHandcrafted;
  }
  if (name == "oracle") {
    return FeatureMode::kOracle;
  }
  throw std::invalid_argument("unknown feature mode: " + name);
}

json eval_to_json(const EvalReport& report) {
  return json{{"epe", report.epe},
              {"acc_strict", report.acc_strict},
              {"acc_relaxed", report.acc_relaxed},
              {"outliers", report.outliers},
              {"evaluated_points", report.evaluated_points}};
}

void write_json(const json& payload, const std::string& path) {
  if (path.empty()) {
    std::cout << payload.dump(2) << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  out << payload.dump(2) << '\n';
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

OtParams params_from_args(const EstimateArgs& args) {
  OtParams params = args.mass_conserving ? OtParams::mass_conserving(args.epsilon, args.k)
                    : args.has_lambda    ? OtParams::from_lambda(args.epsilon, args.lambda, args.k)
                                         : OtParams::from_power(args.epsilon, args.power, args.k);
  return args.no_floor ? params.without_floor() : params;
}

}  // namespace

int run_synth(const SynthArgs& args) {
  SceneSpec spec;
  spec.n = args.n;
  spec.seed = args.seed;
  spec.occlusion_fraction = args.rho;
  spec.resample_pool = args.pool > 0 ? args.pool : 4 * args.n;
  spec.motion.max_rotation_deg = args.max_rotation_deg;
  spec.motion.max_translation = args.max_translation;
  spec.motion.jitter_sigma = args.jitter_sigma;
  spec.cube_extent = args.cube_extent;

  ScenePair scene = [&] {
    if (args.regime == "perfect") {
      return gen_perfect(spec);
    }
    if (args.regime == "resampled") {
      return gen_resampled(spec);
    }
    if (args.regime == "occluded") {
      return gen_occluded(spec);
    }
    throw std::invalid_argument("unknown regime: " + args.regime);
  }();

  const fs::path manifest = write_scene(args.out_dir, args.name, scene);
  std::cout << manifest.string() << '\n';
  return 0;
}

int run_estimate(const EstimateArgs& args) {
  const ScenePair scene = read_scene(args.scene_manifest);

  PipelineConfig config;
  config.features = parse_feature_mode(args.features);
  config.feature_neighbors = args.feature_neighbors;
  config.gate_radius = args.gate_radius;
  config.ot = params_from_args(args);
  config.use_flot0 = args.flot0;
  config.mass_threshold = args.mass_threshold;
  config.refine_rounds = args.refine_rounds;
  config.refine_neighbors = args.refine_neighbors;

  const PipelineResult result = run_pipeline(scene, config);
  const FlowField& output = result.estimate.best();
  if (!args.flow_out.empty()) {
    write_flow(args.flow_out, output);
  }

  json report;
  report["fallback_count"] = result.estimate.fallback_count;
  report["marginal_residuals"] = {{"row_max", result.row_residual_max},
                                  {"col_max", result.col_residual_max}};
  report["timings_ms"] = {{"features", result.timings.features_ms},
                          {"cost", result.timings.cost_ms},
                          {"transport", result.timings.transport_ms},
                          {"interpolate", result.timings.interpolate_ms},
                          {"refine", result.timings.refine_ms},
                          {"total", result.timings.total_ms}};
  report["config"] = {{"features", args.features},
                      {"epsilon", config.ot.epsilon()},
                      {"effective_epsilon", config.ot.effective_epsilon()},
                      {"power", config.ot.power()},
                      {"k", config.ot.iterations()},
                      {"flot0", config.use_flot0},
                      {"gate_radius", config.gate_radius},
                      {"mass_threshold", config.mass_threshold},
                      {"refine_rounds", config.refine_rounds}};
  try {
    report["eval"] = eval_to_json(evaluate(output, scene.truth(), scene.mask()));
  } catch (const EmptyEvaluationError&) {
    // Nothing to score against; the flow output is still valid.
  }
  write_json(report, args.report_out);
  return 0;
}

int run_eval(const EvalArgs& args) {
  const FlowField est = read_flow(args.est_path);
  const FlowField truth = read_flow(args.truth_path);
  const ValidityMask mask = read_mask(args.mask_path);
  const json report = eval_to_json(evaluate(est, truth, mask));
  if (!args.report_out.empty()) {
    write_json(report, args.report_out);
  }
  std::cout << report.dump(2) << '\n';
  return 0;
}

int run_calibrate(const CalibrateArgs& args) {
  std::vector<fs::path> manifests;
  for (const auto& entry : fs::directory_iterator(args.scene_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      manifests.push_back(entry.path());
    }
  }
  std::sort(manifests.begin(), manifests.end());
  if (manifests.empty()) {
    throw IoError("no scene manifests (*.json) found in " + args.scene_dir);
  }
  std::vector<ScenePair> scenes;
  scenes.reserve(manifests.size());
  for (const fs::path& manifest : manifests) {
    scenes.push_back(read_scene(manifest));
  }

  CalibrationGrid grid = CalibrationGrid::defaults();
  if (!args.epsilons.empty()) {
    grid.epsilons = args.epsilons;
  }
  if (!args.powers.empty()) {
    grid.powers = args.powers;
  }
  if (!args.ks.empty()) {
    grid.ks = args.ks;
  }
  CalibrationOptions options;
  options.feature_neighbors = args.feature_neighbors;
  options.gate_radius = args.gate_radius;

  const CalibrationResult result =
      grid_search(scenes, parse_feature_mode(args.features), grid, options);

  auto candidate_to_json = [](const CandidateScore& c) {
    return json{{"epsilon", c.epsilon},
                {"power", c.power},
                {"k", c.k},
                {"epe", c.mean.epe},
                {"acc_strict", c.mean.acc_strict},
                {"acc_relaxed", c.mean.acc_relaxed},
                {"outliers", c.mean.outliers},
                {"evaluated_points", c.mean.evaluated_points}};
  };
  json report;
  report["scenes"] = scenes.size();
  report["best"] = candidate_to_json(result.best);
  report["table"] = json::array();
  for (const CandidateScore& c : result.table) {
    report["table"].push_back(candidate_to_json(c));
  }
  write_json(report, args.report_out);
  if (!args.report_out.empty()) {
    std::cout << args.report_out << '\n';
  }

  if (!args.table_out.empty()) {
    std::ofstream csv(args.table_out, std::ios::binary);
    if (!csv) {
      throw IoError("cannot open for writing: " + args.table_out);
    }
    csv << "epsilon,power,k,epe,acc_strict,acc_relaxed,outliers,evaluated_points\n";
    for (const CandidateScore& c : result.table) {
      csv << format_double(c.epsilon) << ',' << format_double(c.power) << ',' << c.k << ','
          << format_double(c.mean.epe) << ',' << format_double(c.mean.acc_strict) << ','
          << format_double(c.mean.acc_relaxed) << ',' << format_double(c.mean.outliers) << ','
          << format_double(c.mean.evaluated_points) << '\n';
    }
    if (!csv) {
      throw IoError("write failed: " + args.table_out);
    }
  }
  return 0;
}

int run_bench(const BenchArgs& args) {
  if (args.sizes.empty() || args.ks.empty() || args.repeats < 1) {
    throw std::invalid_argument("bench: need sizes, ks and repeats >= 1");
  }
  std::ostringstream csv;
  csv << "n,k,ot_ms_median,ot_ms_mean,repeats\n";
  for (Index n : args.sizes) {
    // One synthetic cost per size, reused across K so rows are comparable.
    Rng rng = seeded_rng(args.seed + static_cast<std::uint64_t>(n));
    Eigen::MatrixXd values(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        values(i, j) = rng.uniform(0.0, 2.0);
      }
    }
    const CostMatrix cost = CostMatrix::dense(std::move(values));
    // Batch tiny solves so a single sample never rounds to zero time.
    const int inner = static_cast<int>(std::max<Index>(1, 2048 / n));
    for (int k : args.ks) {
      const OtParams params = OtParams::from_power(args.epsilon, args.power, k);
      std::vector<double> samples;
      samples.reserve(static_cast<std::size_t>(args.repeats));
      double sum = 0.0;
      for (int r = 0; r < args.repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        for (int it = 0; it < inner; ++it) {
          const TransportPlan plan = sinkhorn(cost, params);
          (void)plan;
        }
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count() /
                          inner;
        samples.push_back(ms);
        sum += ms;
      }
      std::sort(samples.begin(), samples.end());
      const double median = samples[samples.size() / 2];
      csv << n << ',' << k << ',' << format_double(median) << ','
          << format_double(sum / args.repeats) << ',' << args.repeats << '\n';
    }
  }
  if (args.out_csv.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(args.out_csv, std::ios::binary);
    if (!out) {
      throw IoError("cannot open for writing: " + args.out_csv);
    }
    out << csv.str();
    if (!out) {
      throw IoError("write failed: " + args.out_csv);
    }
    std::cout << args.out_csv << '\n';
  }
  return 0;
}

}  // namespace otflow::cli
