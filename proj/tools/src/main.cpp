#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "otflow/errors.hpp"

namespace {

// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical
// infeasibility (degenerate cost / infeasible assignment).
constexpr int kUsageError = 2;
constexpr int kDataError = 3;
constexpr int kNumericalError = 4;

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const otflow::DegenerateCostError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const otflow::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const otflow::EmptyEvaluationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const otflow::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace otflow::cli;

  CLI::App app{"Scene flow on point clouds by relaxed entropic optimal transport"};
  app.require_subcommand(1);

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic scene pair");
  synth_cmd->add_option("--regime", synth.regime, "perfect | resampled | occluded")
      ->check(CLI::IsMember({"perfect", "resampled", "occluded"}));
  synth_cmd->add_option("--n", synth.n, "Points per cloud")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--rho", synth.rho, "Occluded fraction in [0, 1)");
  synth_cmd->add_option("--pool", synth.pool, "Dense pool size (0 = 4n)");
  synth_cmd->add_option("--theta-max", synth.max_rotation_deg, "Max rotation (degrees)");
  synth_cmd->add_option("--t-max", synth.max_translation, "Max translation (meters)");
  synth_cmd->add_option("--jitter", synth.jitter_sigma, "Per-point jitter sigma (meters)");
  synth_cmd->add_option("--cube", synth.cube_extent, "Sampling cube side (meters)");
  synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--name", synth.name, "Base name for the scene files");

  EstimateArgs est;
  CLI::App* est_cmd = app.add_subcommand("estimate", "Estimate flow for a scene pair");
  est_cmd->add_option("--scene", est.scene_manifest, "Scene manifest JSON")->required();
  est_cmd->add_option("--features", est.features, "handcrafted | oracle")
      ->check(CLI::IsMember({"handcrafted", "oracle"}));
  est_cmd->add_option("--epsilon", est.epsilon, "Entropic weight");
  auto* power_opt = est_cmd->add_option("--power", est.power, "Mass exponent in [0, 1]");
  auto* lambda_opt =
      est_cmd->add_option("--lambda", est.lambda, "Mass relaxation weight (alternative to --power)");
  auto* conserve_opt = est_cmd->add_flag("--mass-conserving", est.mass_conserving,
                                         "Infinite lambda: power exactly 1");
  lambda_opt->excludes(power_opt)->excludes(conserve_opt);
  conserve_opt->excludes(power_opt);
  est_cmd->add_option("--k", est.k, "Sinkhorn iterations")->check(CLI::NonNegativeNumber);
  est_cmd->add_flag("--flot0", est.flot0, "Use the closed-form kernel (no marginal scaling)");
  est_cmd->add_flag("--no-epsilon-floor", est.no_floor, "Disable the 0.03 epsilon floor");
  est_cmd->add_option("--d-max", est.gate_radius, "Gate radius (meters)");
  est_cmd->add_option("--tau", est.mass_threshold, "Row-mass fallback threshold");
  est_cmd->add_option("--refine-rounds", est.refine_rounds, "Smoothing rounds (0 = off)")
      ->check(CLI::NonNegativeNumber);
  est_cmd->add_option("--refine-knn", est.refine_neighbors, "Neighbors per smoothing round");
  est_cmd->add_option("--feature-knn", est.feature_neighbors,
                      "Neighborhood size of the handcrafted descriptor");
  est_cmd->add_option("--flow-out", est.flow_out, "Write the estimated flow here");
  est_cmd->add_option("--report-out", est.report_out, "Write the JSON run report here");

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score an estimated flow against ground truth");
  eval_cmd->add_option("--est", eval.est_path, "Estimated flow file")->required();
  eval_cmd->add_option("--truth", eval.truth_path, "Ground-truth flow file")->required();
  eval_cmd->add_option("--mask", eval.mask_path, "Validity mask file")->required();
  eval_cmd->add_option("--report-out", eval.report_out, "Also write the JSON report here");

  CalibrateArgs cal;
  CLI::App* cal_cmd = app.add_subcommand("calibrate", "Grid-search (epsilon, power, K)");
  cal_cmd->add_option("--scenes", cal.scene_dir, "Directory of scene manifests")->required();
  cal_cmd->add_option("--features", cal.features, "handcrafted | oracle")
      ->check(CLI::IsMember({"handcrafted", "oracle"}));
  cal_cmd->add_option("--epsilons", cal.epsilons, "Candidate epsilon values")->delimiter(',');
  cal_cmd->add_option("--powers", cal.powers, "Candidate power values")->delimiter(',');
  cal_cmd->add_option("--ks", cal.ks, "Candidate iteration counts")->delimiter(',');
  cal_cmd->add_option("--feature-knn", cal.feature_neighbors,
                      "Neighborhood size of the handcrafted descriptor");
  cal_cmd->add_option("--d-max", cal.gate_radius, "Gate radius (meters)");
  cal_cmd->add_option("--out", cal.report_out, "Write the JSON result here (default stdout)");
  cal_cmd->add_option("--table", cal.table_out, "Write the per-candidate CSV table here");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time the transport solve across n and K");
  bench_cmd->add_option("--sizes", bench.sizes, "Cost sizes n")->delimiter(',');
  bench_cmd->add_option("--ks", bench.ks, "Iteration counts")->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats, "Timing repetitions per cell")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--epsilon", bench.epsilon, "Entropic weight");
  bench_cmd->add_option("--power", bench.power, "Mass exponent");
  bench_cmd->add_option("--seed", bench.seed, "Cost generator seed");
  bench_cmd->add_option("--out", bench.out_csv, "Write the CSV here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the error and usage hint
    return kUsageError;
  }

  if (synth_cmd->parsed()) {
    return guarded([&] { return run_synth(synth); });
  }
  if (est_cmd->parsed()) {
    if (lambda_opt->count() > 0) {
      est.has_lambda = true;
    }
    return guarded([&] { return run_estimate(est); });
  }
  if (eval_cmd->parsed()) {
    return guarded([&] { return run_eval(eval); });
  }
  if (cal_cmd->parsed()) {
    return guarded([&] { return run_calibrate(cal); });
  }
  if (bench_cmd->parsed()) {
    return guarded([&] { return run_bench(bench); });
  }
  return kUsageError;
}
