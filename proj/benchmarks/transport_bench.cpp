#include <benchmark/benchmark.h>

#include "otflow/cost.hpp"
#include "otflow/features.hpp"
#include "otflow/flow.hpp"
#include "otflow/knn.hpp"
#include "otflow/rng.hpp"
#include "otflow/transport.hpp"

using namespace otflow;

namespace {

CostMatrix make_cost(Index n, std::uint64_t seed) {
  Rng rng = seeded_rng(seed);
  Eigen::MatrixXd values(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      values(i, j) = rng.uniform(0.0, 2.0);
    }
  }
  return CostMatrix::dense(std::move(values));
}

PointCloud make_cloud(Index n, std::uint64_t seed) {
  Rng rng = seeded_rng(seed);
  Coords pts(n, 3);
  for (Index i = 0; i < n; ++i) {
    pts.row(i) = rng.uniform_in_cube(5.0).transpose();
  }
  return PointCloud(std::move(pts));
}

void BM_Sinkhorn(benchmark::State& state) {
  const Index n = state.range(0);
  const int k = static_cast<int>(state.range(1));
  const CostMatrix cost = make_cost(n, 1);
  const OtParams params = OtParams::from_power(0.03, 0.5, k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sinkhorn(cost, params));
  }
  state.SetComplexityN(n);
}

void BM_Flot0Plan(benchmark::State& state) {
  const Index n = state.range(0);
  const CostMatrix cost = make_cost(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(flot0_plan(cost, 0.03));
  }
  state.SetComplexityN(n);
}

void BM_BuildCost(benchmark::State& state) {
  const Index n = state.range(0);
  const PointCloud p = make_cloud(n, 3);
  const PointCloud q = make_cloud(n, 4);
  const FeatureMatrix fp = handcrafted_features(p, 32);
  const FeatureMatrix fq = handcrafted_features(q, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_cost(fp, fq, p, q, 10.0));
  }
  state.SetComplexityN(n);
}

void BM_Knn(benchmark::State& state) {
  const Index n = state.range(0);
  const PointCloud cloud = make_cloud(n, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn(cloud, cloud, 32));
  }
  state.SetComplexityN(n);
}

void BM_InterpolateFlow(benchmark::State& state) {
  const Index n = state.range(0);
  const PointCloud p = make_cloud(n, 6);
  const PointCloud q = make_cloud(n, 7);
  const TransportPlan plan = flot0_plan(make_cost(n, 8), 0.03);
  for (auto _ : state) {
    benchmark::DoNotOptimize(interpolate_flow(plan, p, q));
  }
  state.SetComplexityN(n);
}

}  // namespace

BENCHMARK(BM_Sinkhorn)
    ->Args({512, 1})
    ->Args({512, 3})
    ->Args({512, 5})
    ->Args({1024, 3})
    ->Args({2048, 3})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Flot0Plan)->Arg(512)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildCost)->Arg(512)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Knn)->Arg(512)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InterpolateFlow)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
