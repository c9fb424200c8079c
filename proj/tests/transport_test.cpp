#include <doctest.h>

#include <cmath>

#include "otflow/errors.hpp"
#include "otflow/features.hpp"
#include "otflow/rng.hpp"
#include "otflow/synth.hpp"
#include "otflow/transport.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace otflow;

namespace {

CostMatrix oracle_cost(const ScenePair& pair) {
  const auto [fp, fq] = oracle_features(pair);
  return build_cost(fp, fq, pair.source(), pair.target(), 1e9);
}

}  // namespace

TEST_SUITE("transport") {

TEST_CASE("ot params validate and floor epsilon") {
  CHECK_THROWS_AS(OtParams::from_power(0.0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(OtParams::from_power(0.1, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(OtParams::from_power(0.1, 0.5, -1), std::invalid_argument);

  const OtParams floored = OtParams::from_power(0.005, 0.5, 3);
  CHECK(floored.effective_epsilon() == 0.03);
  CHECK(floored.without_floor().effective_epsilon() == 0.005);
  CHECK(OtParams::from_power(0.1, 0.5, 3).effective_epsilon() == 0.1);

  CHECK(OtParams::from_lambda(0.1, 0.0, 3).power() == 0.0);
  CHECK(OtParams::from_lambda(0.1, 0.1, 3).power() == doctest::Approx(0.5));
  CHECK(OtParams::mass_conserving(0.1, 3).power() == 1.0);
}

TEST_CASE("single point, zero cost: all mass on the only entry") {
  const CostMatrix c = CostMatrix::dense(Eigen::MatrixXd::Zero(1, 1));
  for (const double power : {0.0, 0.5, 1.0}) {
    for (const int k : {0, 1, 5}) {
      const TransportPlan t = sinkhorn(c, OtParams::from_power(1.0, power, k));
      CHECK(t.mass(0, 0) == 1.0);
    }
  }
}

TEST_CASE("power zero reduces to the kernel for any K") {
  Rng rng = seeded_rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + rng.uniform_index(32);
    const CostMatrix c = testutil::random_gated_cost(rng, n, 0.2);
    const double eps = rng.uniform(0.01, 1.0);
    const int k = static_cast<int>(rng.uniform_index(6));
    const OtParams params = OtParams::from_power(eps, 0.0, k).without_floor();
    const TransportPlan iterated = sinkhorn(c, params);
    const TransportPlan closed = flot0_plan(c, eps);
    CHECK(iterated.masses() == closed.masses());  // bitwise
  }
}

TEST_CASE("spec two-point instance: near-diagonal plan") {
  Eigen::MatrixXd values(2, 2);
  values << 0, 5, 5, 0;
  const CostMatrix c = CostMatrix::dense(values);
  const TransportPlan t = sinkhorn(c, OtParams::mass_conserving(0.03, 3));
  CHECK(t.mass(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t.mass(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t.mass(0, 1) <= 1e-20);
  CHECK(t.mass(1, 0) <= 1e-20);
  const Eigen::MatrixXd reference = oracle::reference_sinkhorn(c, 0.03, 1.0, 3);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      CHECK(t.mass(i, j) == doctest::Approx(reference(i, j)).epsilon(1e-14));
    }
  }
}

TEST_CASE("sinkhorn matches the scalar reference on random gated costs") {
  Rng rng = seeded_rng(211);
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = 2 + rng.uniform_index(15);
    const CostMatrix c = testutil::random_gated_cost(rng, n, 0.3);
    const double eps = rng.uniform(0.05, 0.8);
    const double power = rng.uniform(0.0, 1.0);
    const int k = 1 + static_cast<int>(rng.uniform_index(6));
    const TransportPlan t = sinkhorn(c, OtParams::from_power(eps, power, k));
    const Eigen::MatrixXd reference =
        oracle::reference_sinkhorn(c, std::max(eps, 0.03), power, k);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        CHECK(t.mass(i, j) ==
              doctest::Approx(reference(i, j)).epsilon(1e-12).scale(std::max(1.0, reference(i, j))));
      }
    }
  }
}

TEST_CASE("flot0 plan equals the elementwise exponential") {
  Rng rng = seeded_rng(303);
  const CostMatrix c = testutil::random_dense_cost(rng, 3);
  const TransportPlan t = flot0_plan(c, 0.03);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      CHECK(t.mass(i, j) == doctest::Approx(std::exp(-c.value(i, j) / 0.03)).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(flot0_plan(c, 0.0), std::invalid_argument);

  const CostMatrix zeros = CostMatrix::dense(Eigen::MatrixXd::Zero(2, 2));
  const TransportPlan ones = flot0_plan(zeros, 1.0);
  CHECK(ones.masses() == Eigen::MatrixXd::Ones(2, 2));
}

TEST_CASE("gated entries carry zero mass for all parameter choices") {
  Rng rng = seeded_rng(401);
  const CostMatrix c = testutil::random_gated_cost(rng, 12, 0.4);
  for (const double power : {0.0, 0.5, 1.0}) {
    const TransportPlan t = sinkhorn(c, OtParams::from_power(0.05, power, 4));
    for (Index i = 0; i < 12; ++i) {
      for (Index j = 0; j < 12; ++j) {
        if (c.gated(i, j)) {
          CHECK(t.mass(i, j) == 0.0);
        }
      }
    }
  }
  const TransportPlan t0 = flot0_plan(c, 0.05);
  for (Index i = 0; i < 12; ++i) {
    for (Index j = 0; j < 12; ++j) {
      if (c.gated(i, j)) {
        CHECK(t0.mass(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("degenerate rows and columns raise with the offending indices") {
  Eigen::MatrixXd values = Eigen::MatrixXd::Ones(3, 3);
  CostMatrix::GateMask gated = CostMatrix::GateMask::Constant(3, 3, false);
  gated(1, 0) = gated(1, 1) = gated(1, 2) = true;  // row 1 dead
  const CostMatrix c(values, gated, 10.0);
  CHECK_THROWS_AS(sinkhorn(c, OtParams()), DegenerateCostError);
  try {
    sinkhorn(c, OtParams());
  } catch (const DegenerateCostError& e) {
    REQUIRE(e.gated_rows().size() == 1);
    CHECK(e.gated_rows()[0] == 1);
    CHECK(e.gated_cols().empty());
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
}

TEST_CASE("balanced marginals: row sums exact, column residual shrinks with K") {
  Rng rng = seeded_rng(509);
  const Index n = 64;
  const CostMatrix c = testutil::random_dense_cost(rng, n);
  const double inv_n = 1.0 / static_cast<double>(n);
  double previous_residual = std::numeric_limits<double>::infinity();
  for (const int k : {1, 3, 5, 10}) {
    const TransportPlan t = sinkhorn(c, OtParams::mass_conserving(0.1, k));
    const auto [rows, cols] = marginals(t);
    for (Index i = 0; i < n; ++i) {
      CHECK(std::abs(rows(i) - inv_n) <= 1e-9 * inv_n);
    }
    const double residual = (cols.array() - inv_n).abs().maxCoeff();
    CHECK(residual <= previous_residual + 1e-14);
    previous_residual = residual;
  }
}

TEST_CASE("marginals trivial cases and reordered-sum oracle") {
  const Index n = 4;
  Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(n, n) / static_cast<double>(n);
  const TransportPlan t(ident, OtParams());
  const auto [rows, cols] = marginals(t);
  CHECK((rows.array() == 0.25).all());
  CHECK((cols.array() == 0.25).all());

  const TransportPlan zero(Eigen::MatrixXd::Zero(2, 2), OtParams());
  const auto [zr, zc] = marginals(zero);
  CHECK((zr.array() == 0.0).all());
  CHECK((zc.array() == 0.0).all());

  Rng rng = seeded_rng(601);
  Eigen::MatrixXd masses(5, 5);
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 5; ++j) {
      masses(i, j) = rng.uniform();
    }
  }
  const TransportPlan random_plan(masses, OtParams());
  const auto [rr, cc] = marginals(random_plan);
  for (Index i = 0; i < 5; ++i) {
    double row = 0.0;
    double col = 0.0;
    for (Index j = 4; j >= 0; --j) {  // reversed order
      row += masses(i, j);
      col += masses(j, i);
    }
    CHECK(rr(i) == doctest::Approx(row).epsilon(1e-12));
    CHECK(cc(i) == doctest::Approx(col).epsilon(1e-12));
  }
}

TEST_CASE("permutation recovery on the oracle cost") {
  SceneSpec spec;
  spec.n = 24;
  spec.seed = 5;
  spec.cube_extent = 6.0;
  const ScenePair pair = gen_perfect(spec);
  const CostMatrix c = oracle_cost(pair);
  const auto& perm = *pair.permutation();
  for (const double power : {0.0, 0.3, 0.7, 1.0}) {
    for (const double eps : {0.03, 0.01}) {
      const TransportPlan t =
          sinkhorn(c, OtParams::from_power(eps, power, 3).without_floor());
      for (Index i = 0; i < spec.n; ++i) {
        Index argmax = 0;
        t.masses().row(i).maxCoeff(&argmax);
        CHECK(argmax == perm[static_cast<std::size_t>(i)]);
      }
    }
  }
}

TEST_CASE("monotone sharpening as epsilon decreases on the oracle cost") {
  SceneSpec spec;
  spec.n = 10;
  spec.seed = 8;
  spec.cube_extent = 6.0;
  const ScenePair pair = gen_perfect(spec);
  const CostMatrix c = oracle_cost(pair);
  const auto& perm = *pair.permutation();

  double previous_ratio = 0.0;
  for (const double eps : {0.5, 0.25, 0.1, 0.05}) {
    const TransportPlan t = sinkhorn(c, OtParams::from_power(eps, 0.5, 3).without_floor());
    double worst = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < spec.n; ++i) {
      const Index match = perm[static_cast<std::size_t>(i)];
      double best_other = 0.0;
      for (Index j = 0; j < spec.n; ++j) {
        if (j != match) {
          best_other = std::max(best_other, t.mass(i, j));
        }
      }
      worst = std::min(worst, t.mass(i, match) / best_other);
    }
    CHECK(worst >= previous_ratio);
    previous_ratio = worst;
  }
}

TEST_CASE("scale equivariance at the balanced fixed point") {
  Rng rng = seeded_rng(707);
  for (const Index n : {2, 3, 5}) {
    const CostMatrix c = testutil::random_dense_cost(rng, n);
    const double scale = 3.7;
    Eigen::MatrixXd scaled_values = c.values() * scale;
    const CostMatrix scaled = CostMatrix::dense(std::move(scaled_values));
    const TransportPlan base =
        sinkhorn(c, OtParams::mass_conserving(0.2, 200).without_floor());
    const TransportPlan equiv =
        sinkhorn(scaled, OtParams::mass_conserving(0.2 * scale, 200).without_floor());
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        CHECK(std::abs(base.mass(i, j) - equiv.mass(i, j)) <= 1e-6);
      }
    }
  }
}

}  // TEST_SUITE
