#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "vrrw/sim.hpp"
#include "vrrw/scenarios.hpp"

using namespace vrrw;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

RunConfig example1_config(long long steps, std::uint64_t seed) {
  RunConfig cfg;
  cfg.graph = example1_graph();
  cfg.Z0 = {37.5, 37.5, 12.5, 12.5, 1.0, 1.0};  // biased toward the square
  cfg.start_vertex = 0;
  cfg.total_steps = steps;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("walk state bookkeeping") {
  const WeightedGraph g = example1_graph();
  WalkState st = make_walk(g, {}, 2, 7u);
  CHECK(st.n0 == doctest::Approx(6.0));
  CHECK(st.position == 2);
  CHECK(st.total_mass() == doctest::Approx(6.0));
  step(g, st);
  CHECK(st.n == 1);
  CHECK(st.total_mass() == doctest::Approx(7.0));
  CHECK(st.occupation().sum() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(make_walk(g, {1, 1, 1}, 0, 1u), std::invalid_argument);
  CHECK_THROWS_AS(make_walk(g, {1, 1, 1, 1, 0, 1}, 0, 1u), std::invalid_argument);
  CHECK_THROWS_AS(make_walk(g, {}, 9, 1u), std::invalid_argument);
}

TEST_CASE("one-step law matches the reinforcement rule") {
  // triangle: from vertex 0 the targets are 1 (weight c=1, Z=1) and
  // 2 (weight b=1, Z=3), so P(target=1) = 1/4
  const WeightedGraph tri = triangle_graph(1.5, 1.0, 1.0);
  int hits = 0;
  const int trials = 12000;
  for (int k = 0; k < trials; ++k) {
    WalkState st = make_walk(tri, {1.0, 1.0, 3.0}, 0, static_cast<std::uint64_t>(k));
    step(tri, st);
    CHECK(st.position != 0);  // no loop at 0
    if (st.position == 1) ++hits;
  }
  // binomial(12000, 1/4): sd ~ 47.4; allow ~5 sd
  CHECK(std::abs(hits - 3000) < 240);

  // reinforcement shifts the law: after forcing Z, heavier neighbors win
  const WeightedGraph k3 = complete_graph(3);
  int ones = 0;
  for (int k = 0; k < trials; ++k) {
    WalkState st = make_walk(k3, {1.0, 2.0, 4.0}, 0, static_cast<std::uint64_t>(k) ^ 0x9e3779b9u);
    step(k3, st);
    if (st.position == 1) ++ones;
  }
  // P(target=1) = 2/6
  CHECK(std::abs(ones - 4000) < 260);
}

TEST_CASE("total mass invariant and reproducibility") {
  RunConfig cfg = example1_config(100000, 17u);
  const LocalizationReport a = run(cfg);
  CHECK(a.final_Z.sum() ==
        doctest::Approx(100000.0 + 102.0).epsilon(1e-12));
  CHECK(a.final_v.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.final_Z.minCoeff() >= 1.0);  // counts never drop below Z0

  const LocalizationReport b = run(cfg);
  CHECK((a.final_Z - b.final_Z).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.range_estimate == b.range_estimate);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (std::size_t k = 0; k < a.snapshots.size(); ++k)
    CHECK((a.snapshots[k].v - b.snapshots[k].v).cwiseAbs().maxCoeff() == 0.0);

  cfg.seed = 18u;
  const LocalizationReport c = run(cfg);
  CHECK((a.final_Z - c.final_Z).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("snapshot schedule") {
  const auto sched = default_schedule(1000000);
  REQUIRE_FALSE(sched.empty());
  CHECK(sched.front() >= 1);
  CHECK(sched.back() == 1000000);
  for (std::size_t k = 1; k < sched.size(); ++k) CHECK(sched[k] > sched[k - 1]);
  // at most 64 points per decade
  for (int d = 0; d < 6; ++d) {
    const double lo = std::pow(10.0, d), hi = std::pow(10.0, d + 1);
    int cnt = 0;
    for (long long n : sched)
      if (n > lo && n <= hi) ++cnt;
    CHECK(cnt <= 65);
  }
  CHECK(default_schedule(0).empty());

  // a custom schedule must end at total_steps
  RunConfig cfg = example1_config(1000, 1u);
  cfg.snapshot_schedule = {10, 100};
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}

TEST_CASE("run fills snapshots, ranges and fits") {
  RunConfig cfg = example1_config(50000, 4u);
  cfg.reference_q = example1_point();
  cfg.track_z = true;
  const LocalizationReport rep = run(cfg);

  REQUIRE_FALSE(rep.snapshots.empty());
  CHECK(rep.snapshots.back().n == 50000);
  CHECK(rep.window == 10000);
  CHECK(rep.total_steps == 50000);
  CHECK(rep.n0 == doctest::Approx(102.0));
  CHECK(rep.entropy_series.size() == rep.snapshots.size());
  CHECK(rep.H_series.size() == rep.snapshots.size());

  for (const auto& snap : rep.snapshots) {
    CHECK(snap.v.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(snap.H == doctest::Approx(H_val(cfg.graph, snap.v)).epsilon(1e-12));
    REQUIRE(snap.z.has_value());
    CHECK(snap.z->sum() == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(snap.V_q.has_value());
    CHECK(*snap.V_q >= -1e-12);
    REQUIRE(snap.I_q_val.has_value());
  }

  // range estimates are consistent with final occupation
  for (int i : rep.range_estimate) CHECK(rep.final_Z[i] > 1.0);
  // every vertex got a fit over the last two decades of snapshots
  CHECK(rep.exponent_fits.size() == 6);
}

TEST_CASE("predicted boundary exponents") {
  const WeightedGraph ex = example1_graph();
  CHECK(theoretical_exponent(ex, example1_point(), 4) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(theoretical_exponent(ex, example1_point(), 5), std::invalid_argument);
  CHECK_THROWS_AS(theoretical_exponent(ex, example1_point(), 0), std::invalid_argument);

  // looped origin: both neighbors grow like n^1 (i.e. log-speed regime)
  const WeightedGraph zl = zloop_graph(4);
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(9);
  delta[4] = 1.0;
  CHECK(theoretical_exponent(zl, SimplexPoint(delta), 3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(theoretical_exponent(zl, SimplexPoint(delta), 5) == doctest::Approx(1.0).epsilon(1e-12));

  // five-point window on the line: boundary exponent 1/2
  const WeightedGraph zt = ztrunc_graph(5);
  Eigen::VectorXd q = Eigen::VectorXd::Zero(11);
  q[4] = 0.25;
  q[5] = 0.5;
  q[6] = 0.25;
  CHECK(theoretical_exponent(zt, SimplexPoint(q), 3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(theoretical_exponent(zt, SimplexPoint(q), 7) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("entropy drift diagnostic") {
  RunConfig cfg = example1_config(100000, 11u);
  cfg.reference_q = example1_point();
  cfg.track_z = true;
  const LocalizationReport rep = run(cfg);

  const auto rows = entropy_drift_check(cfg.graph, *cfg.reference_q, rep, 10000);
  REQUIRE(rows.size() >= 8);
  double measured_sum = 0.0;
  for (const auto& row : rows) {
    CHECK(std::isfinite(row.measured));
    CHECK(std::isfinite(row.predicted));
    CHECK(row.n_end > row.n_begin);
    measured_sum += row.measured * static_cast<double>(row.n_end - row.n_begin);
  }
  // near the reference point the entropy must not grow on balance
  CHECK(measured_sum <= 1e-3);

  // without a reference there is nothing to diagnose
  RunConfig bare = example1_config(2000, 11u);
  const LocalizationReport none = run(bare);
  CHECK_THROWS_AS(entropy_drift_check(bare.graph, example1_point(), none, 100),
                  std::invalid_argument);
  CHECK_THROWS_AS(entropy_drift_check(cfg.graph, *cfg.reference_q, rep, 0),
                  std::invalid_argument);
}

TEST_CASE("looped origin scenario: statistics and determinism") {
  const ZloopResult a = scenario_zloop(5, 100000, 42u);
  const ZloopResult b = scenario_zloop(5, 100000, 42u);
  CHECK(a.stats.z0_over_n == b.stats.z0_over_n);
  CHECK(a.stats.alpha == b.stats.alpha);
  CHECK((a.report.final_Z - b.report.final_Z).cwiseAbs().maxCoeff() == 0.0);

  CHECK(a.stats.z0_over_n > 0.0);
  CHECK(a.stats.z0_over_n <= 1.0 + 1e-9);
  CHECK(a.stats.alpha >= 0.0);
  CHECK(a.stats.alpha <= 1.0);
  CHECK(std::isfinite(a.stats.z_pm1_logn_over_n));
  CHECK(std::isfinite(a.stats.zm2_scaled));
  CHECK(std::isfinite(a.stats.zp2_scaled));
  if (a.stats.localized_core) {
    CHECK(a.report.range_estimate.front() >= 3);
    CHECK(a.report.range_estimate.back() <= 7);
  }

  CHECK_THROWS_AS(scenario_zloop(3, 1000, 1u), std::invalid_argument);
}

TEST_CASE("stuck walk throws") {
  WeightedGraph g(1);
  WalkState stuck = make_walk(g, {2.0}, 0, 1u);
  CHECK_THROWS_AS(step(g, stuck), std::runtime_error);
  // a single vertex with a loop walks in place
  WeightedGraph loop(1);
  loop.add_edge(0, 0, 1.0);
  WalkState st = make_walk(loop, {2.0}, 0, 1u);
  step(loop, st);
  CHECK(st.position == 0);
  CHECK(st.Z[0] == doctest::Approx(3.0));
}
