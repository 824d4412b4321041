#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "vrrw/replicator.hpp"
#include "vrrw/scenarios.hpp"

using namespace vrrw;

namespace {

WeightedGraph k2_graph() {
  WeightedGraph g(2);
  g.add_edge(0, 1, 1.0);
  return g;
}

WeightedGraph p3_graph() {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  return g;
}

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

void check_close(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
  REQUIRE(a.size() == b.size());
  CHECK((a - b).cwiseAbs().maxCoeff() <= tol);
}

void check_spectrum(const std::vector<double>& got, std::initializer_list<double> want,
                    double tol) {
  REQUIRE(got.size() == want.size());
  int i = 0;
  for (double w : want) {
    CAPTURE(i);
    CHECK(std::abs(got[i] - w) <= tol);
    ++i;
  }
}

// random interior simplex point via exponentials
Eigen::VectorXd random_interior(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> e(1.0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = e(rng) + 1e-3;
  return x / x.sum();
}

}  // namespace

TEST_CASE("rates, mean fitness, field, dissipation on a single edge") {
  const WeightedGraph g = k2_graph();
  const Eigen::VectorXd x = vec({0.25, 0.75});
  const Eigen::VectorXd N = N_vec(g, x);
  CHECK(N[0] == doctest::Approx(0.75));
  CHECK(N[1] == doctest::Approx(0.25));
  CHECK(H_val(g, x) == doctest::Approx(0.375));  // 2 * (1/4)(3/4)
  const Eigen::VectorXd F = F_vec(g, x);
  CHECK(F[0] == doctest::Approx(3.0 / 32.0));
  CHECK(F[1] == doctest::Approx(-3.0 / 32.0));
  CHECK(F.sum() == doctest::Approx(0.0));
  CHECK(J_val(g, x) == doctest::Approx(3.0 / 32.0));
  // edge-stationary measure of the frozen chain: both endpoints carry
  // half of the edge flow
  const SimplexPoint pi = pi_measure(g, SimplexPoint(x));
  CHECK(pi[0] == doctest::Approx(0.5));
  CHECK(pi[1] == doctest::Approx(0.5));
}

TEST_CASE("loops count once") {
  WeightedGraph g(2);
  g.add_edge(0, 1, 1.0);
  g.add_edge(0, 0, 2.0);
  const Eigen::VectorXd x = vec({0.5, 0.5});
  const Eigen::VectorXd N = N_vec(g, x);
  CHECK(N[0] == doctest::Approx(1.5));  // 2 * 0.5 (loop) + 0.5
  CHECK(N[1] == doctest::Approx(0.5));
  // H = a01 * 2 x0 x1 + a00 * x0^2 = 0.5 + 0.5
  CHECK(H_val(g, x) == doctest::Approx(1.0));
}

TEST_CASE("H equals zero only without edge mass") {
  const WeightedGraph g = k2_graph();
  CHECK(H_val(g, vec({1.0, 0.0})) == doctest::Approx(0.0));
  CHECK_THROWS_AS(pi_measure(g, SimplexPoint(vec({1.0, 0.0}))), std::domain_error);
}

TEST_CASE("benchmark equilibrium: exact report") {
  const WeightedGraph g = example1_graph();
  const SimplexPoint x = example1_point();
  const EquilibriumReport rep = classify_equilibrium(g, x);

  CHECK(rep.classification == EquilibriumClass::strictly_stable);
  CHECK(rep.H == doctest::Approx(0.5).epsilon(1e-12));
  check_close(rep.N, vec({0.5, 0.5, 0.5, 0.5, 0.25, 0.0}), 1e-12);
  REQUIRE(rep.boundary_slack.size() == 1);
  CHECK(rep.boundary_slack.at(4) == doctest::Approx(-0.25).epsilon(1e-12));
  check_spectrum(rep.B_spectrum, {-2.0, -2.0, 0.0, 0.0}, 1e-9);
  check_spectrum(rep.DF_spectrum, {-0.5, -0.5, -0.25, 0.0, 0.0}, 1e-9);
  CHECK(rep.nullspace_dim == 2);
  REQUIRE(rep.partition.has_value());
  REQUIRE(rep.partition->parts.size() == 2);
  CHECK(rep.partition->parts[0] == VertexSet{0, 2});
  CHECK(rep.partition->parts[1] == VertexSet{1, 3});
}

TEST_CASE("jacobian blocks and finite differences") {
  const WeightedGraph g = example1_graph();
  const SimplexPoint x = example1_point();
  const JacobianResult jac = jacobian_DF(g, x);

  CHECK(jac.support == VertexSet{0, 1, 2, 3});
  REQUIRE(jac.off_support.size() == 2);
  CHECK(jac.off_support[0] == doctest::Approx(-0.25));  // vertex E
  CHECK(jac.off_support[1] == doctest::Approx(-0.5));   // vertex F
  check_spectrum(jac.tangent_spectrum, {-0.5, -0.5, -0.25, 0.0, 0.0}, 1e-9);

  // full Jacobian against central differences of the raw field
  const int n = g.vertex_count();
  const double h = 1e-6;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd xp = x.values();
    Eigen::VectorXd xm = x.values();
    xp[j] += h;
    xm[j] -= h;
    const Eigen::VectorXd col = (F_vec(g, xp) - F_vec(g, xm)) / (2.0 * h);
    check_close(jac.full.col(j), col, 1e-6);
  }

  // d/dx_j sum_i F_i = -H at simplex points: every column sums to -H, so
  // tangent vectors (zero-sum) stay tangent
  CHECK((jac.full.colwise().sum().array() + 0.5).abs().maxCoeff() <= 1e-12);

  CHECK_THROWS_AS(jacobian_DF(g, SimplexPoint(vec({0.5, 0.3, 0.1, 0.1, 0.0, 0.0}))),
                  std::invalid_argument);
}

TEST_CASE("single edge: spectra") {
  const WeightedGraph g = k2_graph();
  const EquilibriumReport rep = classify_equilibrium(g, SimplexPoint(vec({0.5, 0.5})));
  CHECK(rep.classification == EquilibriumClass::strictly_stable);
  check_spectrum(rep.B_spectrum, {-1.0, -1.0}, 1e-12);
  check_spectrum(rep.DF_spectrum, {-0.5}, 1e-12);
  CHECK(rep.nullspace_dim == 0);
}

TEST_CASE("path interior equilibrium is degenerate but stable") {
  const WeightedGraph g = p3_graph();
  const EquilibriumReport rep =
      classify_equilibrium(g, SimplexPoint(vec({0.25, 0.5, 0.25})));
  check_spectrum(rep.B_spectrum, {-2.0, -1.0, 0.0}, 1e-9);
  CHECK(rep.nullspace_dim == 1);
  // no boundary vertex, so stability is not spoiled by any slack
  CHECK(rep.classification == EquilibriumClass::strictly_stable);
  CHECK(rep.DF_spectrum.back() <= 1e-9);
}

TEST_CASE("unstable and not-an-equilibrium cases") {
  const WeightedGraph k4 = complete_graph(4);
  // a face of K4: the fourth vertex sees everything, slack +1/3
  const EquilibriumReport rep = classify_equilibrium(
      k4, SimplexPoint(vec({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0})));
  CHECK(rep.classification == EquilibriumClass::unstable);
  CHECK(rep.boundary_slack.at(3) == doctest::Approx(1.0 / 3.0));

  const EquilibriumReport noneq =
      classify_equilibrium(k4, SimplexPoint(vec({0.7, 0.1, 0.1, 0.1})));
  CHECK(noneq.classification == EquilibriumClass::not_equilibrium);

  // no internal edge -> H = 0 -> cannot be stable
  const WeightedGraph ex = example1_graph();
  const EquilibriumReport h0 =
      classify_equilibrium(ex, SimplexPoint(vec({0.5, 0.0, 0.0, 0.0, 0.5, 0.0})));
  CHECK(h0.classification == EquilibriumClass::unstable);
  CHECK(h0.H == doctest::Approx(0.0));
}

TEST_CASE("looped origin point mass: stable but not strictly") {
  const WeightedGraph g = zloop_graph(4);  // ids 0..8, loop at 4
  Eigen::VectorXd x = Eigen::VectorXd::Zero(9);
  x[4] = 1.0;
  const EquilibriumReport rep = classify_equilibrium(g, SimplexPoint(x));
  CHECK(rep.H == doctest::Approx(1.0));
  check_spectrum(rep.B_spectrum, {-1.0}, 1e-12);
  CHECK(rep.boundary_slack.at(3) == doctest::Approx(0.0));
  CHECK(rep.boundary_slack.at(5) == doctest::Approx(0.0));
  CHECK(rep.classification == EquilibriumClass::stable);
}

TEST_CASE("triangle closed form") {
  const TriangleEquilibrium uni = solve_triangle_equilibrium(1.0, 1.0, 1.0);
  check_close(uni.point.values(), vec({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}), 1e-14);
  CHECK(uni.H == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  // heavier edge c = a(0,1) starves the opposite vertex 2
  const TriangleEquilibrium t = solve_triangle_equilibrium(1.0, 1.0, 1.5);
  check_close(t.point.values(), vec({0.4, 0.4, 0.2}), 1e-14);
  CHECK(t.H == doctest::Approx(0.8).epsilon(1e-14));

  // heavier edge a = a(1,2) starves vertex 0
  const TriangleEquilibrium s = solve_triangle_equilibrium(1.5, 1.0, 1.0);
  check_close(s.point.values(), vec({0.2, 0.4, 0.4}), 1e-14);
  CHECK(s.H == doctest::Approx(0.8).epsilon(1e-14));

  // the closed form solves the support system
  const WeightedGraph tri = triangle_graph(1.5, 1.0, 1.0);
  const SupportSolve solve = solve_equilibrium_on_support(tri, {0, 1, 2});
  REQUIRE(solve.feasible);
  check_close(solve.point.values(), s.point.values(), 1e-12);
  CHECK(solve.h == doctest::Approx(s.H).epsilon(1e-12));
  CHECK(solve.nullspace_dim == 0);

  const EquilibriumReport rep = classify_equilibrium(tri, s.point);
  CHECK(rep.classification == EquilibriumClass::strictly_stable);
  check_spectrum(rep.B_spectrum, {-2.5, -1.5, -0.8}, 1e-9);

  // degenerate triangles have no interior equilibrium
  CHECK_THROWS_AS(solve_triangle_equilibrium(1.0, 1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_triangle_equilibrium(2.5, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_triangle_equilibrium(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("support solver on the benchmark graph") {
  const WeightedGraph g = example1_graph();

  // square: two-dimensional solution manifold through the uniform point
  const SupportSolve sq = solve_equilibrium_on_support(g, {0, 1, 2, 3});
  REQUIRE(sq.consistent);
  REQUIRE(sq.feasible);
  CHECK(sq.h == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sq.nullspace_dim == 2);
  check_close(sq.point.values(), vec({0.25, 0.25, 0.25, 0.25, 0.0, 0.0}), 1e-12);
  CHECK(sq.S == VertexSet{0, 1, 2, 3});

  // triangle C, D, E: unique
  const SupportSolve tr = solve_equilibrium_on_support(g, {2, 3, 4});
  REQUIRE(tr.feasible);
  CHECK(tr.nullspace_dim == 0);
  CHECK(tr.h == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  check_close(tr.point.values(),
              vec({0.0, 0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0}), 1e-12);

  // disconnected support: only the degenerate h = 0 solution
  const SupportSolve dd = solve_equilibrium_on_support(g, {0, 4});
  CHECK(dd.consistent);
  CHECK(dd.h == doctest::Approx(0.0));
  const EquilibriumReport rep = classify_equilibrium(g, dd.point);
  CHECK(rep.classification == EquilibriumClass::unstable);
}

TEST_CASE("replicator flow: invariants along trajectories") {
  const WeightedGraph tri = triangle_graph(1.5, 1.0, 1.0);
  const SimplexPoint x0(vec({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}));
  const OdeTrajectory t = integrate_replicator(tri, x0, 60.0);
  REQUIRE(t.states.size() == t.times.size());
  REQUIRE(t.H_series.size() == t.times.size());

  // monotone Lyapunov function, dissipation nonnegative
  for (std::size_t k = 1; k < t.H_series.size(); ++k)
    CHECK(t.H_series[k] >= t.H_series[k - 1] - 1e-9);
  for (double j : t.J_series) CHECK(j >= -1e-12);

  // converges to the interior equilibrium
  check_close(t.states.back(), vec({0.2, 0.4, 0.4}), 1e-6);
  CHECK(t.H_series.back() == doctest::Approx(0.8).epsilon(1e-9));

  // dH/dt equals J: five-point stencil away from the ends
  const double dt = t.times[1] - t.times[0];
  for (std::size_t k = 2; k + 2 < t.times.size(); k += 7) {
    const double cd = (-t.H_series[k + 2] + 8.0 * t.H_series[k + 1] -
                       8.0 * t.H_series[k - 1] + t.H_series[k - 2]) /
                      (12.0 * dt);
    CHECK(std::abs(cd - t.J_series[k]) <= 1e-4 * std::max(std::abs(t.J_series[k]), 1e-2));
  }
}

TEST_CASE("replicator flow: faces are invariant") {
  const WeightedGraph tri = triangle_graph(1.5, 1.0, 1.0);
  const OdeTrajectory t =
      integrate_replicator(tri, SimplexPoint(vec({0.7, 0.3, 0.0})), 40.0);
  for (const auto& s : t.states) CHECK(s[2] == 0.0);
  check_close(t.states.back(), vec({0.5, 0.5, 0.0}), 1e-6);
}

TEST_CASE("entropy distance to a reference equilibrium") {
  // single edge, no boundary
  const SimplexPoint q(vec({0.5, 0.5}));
  CHECK(entropy_V(q, vec({0.5, 0.5}), {}) == doctest::Approx(0.0));
  CHECK(entropy_V(q, vec({0.25, 0.75}), {}) ==
        doctest::Approx(0.5 * std::log(4.0 / 3.0)).epsilon(1e-12));
  CHECK(std::isinf(entropy_V(q, vec({1.0, 0.0}), {})));

  // boundary mass enters linearly with factor 2
  const WeightedGraph g = example1_graph();
  const SimplexPoint ex = example1_point();
  const VertexSet boundary = outer_boundary(g, ex.support());
  REQUIRE(boundary == VertexSet{4});
  CHECK(entropy_V(ex, ex.values(), boundary) == doctest::Approx(0.0));
  Eigen::VectorXd y = ex.values();
  y *= 0.99;
  y[4] = 0.01;
  const double expected = -std::log(0.99) + 2.0 * 0.01;
  CHECK(entropy_V(ex, y, boundary) == doctest::Approx(expected).epsilon(1e-12));

  // nonnegativity over random simplex points
  std::mt19937_64 rng(99u);
  for (int k = 0; k < 200; ++k) {
    const Eigen::VectorXd r = random_interior(rng, g.vertex_count());
    CHECK(entropy_V(ex, r, boundary) >= -1e-12);
  }
}

TEST_CASE("entropy production functional") {
  const WeightedGraph g = example1_graph();
  const SimplexPoint q = example1_point();
  CHECK(I_q(g, q, q.values()) == doctest::Approx(0.0));

  // exact value along the A<->B shear: I = -2 t^2
  for (double t : {0.01, 0.05, -0.03}) {
    Eigen::VectorXd y = q.values();
    y[0] += t;
    y[1] -= t;
    CHECK(I_q(g, q, y) == doctest::Approx(-2.0 * t * t).epsilon(1e-10));
  }

  // I_q is the time derivative of V_q along the flow
  std::mt19937_64 rng(7u);
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd y = 0.9 * q.values() + 0.1 * random_interior(rng, 6);
    const VertexSet boundary = outer_boundary(g, q.support());
    const double h = 1e-6;
    const Eigen::VectorXd f = F_vec(g, y);
    const double fd = (entropy_V(q, y + h * f, boundary) -
                       entropy_V(q, y - h * f, boundary)) /
                      (2.0 * h);
    CHECK(fd == doctest::Approx(I_q(g, q, y)).epsilon(1e-5));
  }
}

TEST_CASE("unit-weight stability test") {
  const WeightedGraph g = example1_graph();
  CHECK(theorem2_check(g, example1_point()));
  // the edge A-B with its two zero-slack neighbors is still stable
  CHECK(theorem2_check(g, SimplexPoint(vec({0.5, 0.5, 0.0, 0.0, 0.0, 0.0}))));

  // K4 face: boundary vertex sees mass 1 > 1 - 1/3
  const WeightedGraph k4 = complete_graph(4);
  CHECK_FALSE(theorem2_check(
      k4, SimplexPoint(vec({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0}))));

  // looped origin: a clique of loops
  const WeightedGraph zl = zloop_graph(4);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(9);
  x[4] = 1.0;
  CHECK(theorem2_check(zl, SimplexPoint(x)));

  // unbalanced part masses fail even on the right structure
  const WeightedGraph c4 = cycle_graph(4);
  CHECK_FALSE(theorem2_check(c4, SimplexPoint(vec({0.5, 0.2, 0.2, 0.1})), 1e-8));
  // while any mass split inside the parts is fine
  CHECK(theorem2_check(c4, SimplexPoint(vec({0.4, 0.25, 0.1, 0.25})), 1e-8));

  CHECK_THROWS_AS(theorem2_check(triangle_graph(1.5, 1.0, 1.0),
                                 SimplexPoint(vec({0.2, 0.4, 0.4}))),
                  std::invalid_argument);
}

TEST_CASE("unit-weight stability test agrees with spectral classification") {
  std::mt19937_64 rng(31337u);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int compared = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);  // 2..5
    WeightedGraph g(n);
    // random connected unit-weight graph: random tree plus extras
    for (int v = 1; v < n; ++v)
      g.add_edge(static_cast<int>(rng() % v), v, 1.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!g.adjacent(i, j) && u(rng) < 0.3) g.add_edge(i, j, 1.0);
    if (u(rng) < 0.3) g.add_edge(0, 0, 1.0);

    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      VertexSet S;
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1) S.push_back(v);
      const SupportSolve solve = solve_equilibrium_on_support(g, S);
      if (!solve.feasible) continue;
      bool full = true;
      for (int v : S) full = full && solve.point[v] > 1e-9;
      if (!full) continue;
      const EquilibriumReport rep = classify_equilibrium(g, solve.point);
      if (rep.classification == EquilibriumClass::not_equilibrium) continue;
      const bool stable = rep.classification == EquilibriumClass::stable ||
                          rep.classification == EquilibriumClass::strictly_stable;
      CAPTURE(trial);
      CAPTURE(S);
      REQUIRE(theorem2_check(g, solve.point) == stable);
      ++compared;
    }
  }
  CHECK(compared > 100);
}
