#pragma once

#include "vrrw/graph.hpp"
#include "vrrw/simplex.hpp"

namespace vrrw {

// Six-vertex benchmark graph: square A-B-C-D plus C-E-D and a pendant E-F,
// unit weights.  Vertices are A=0, B=1, C=2, D=3, E=4, F=5.
WeightedGraph example1_graph();
// Its strictly stable equilibrium (3/8, 3/8, 1/8, 1/8, 0, 0).
SimplexPoint example1_point();

// Triangle on {0,1,2} with a = a(1,2), b = a(0,2), c = a(0,1).
WeightedGraph triangle_graph(double a, double b, double c);

// Path on {-K..K} shifted to ids {0..2K}, unit weights.
WeightedGraph ztrunc_graph(int K);

// Same, plus a unit loop at the origin (id K).  Requires K >= 4.
WeightedGraph zloop_graph(int K);

// Complete graph K_n, unit weights.
WeightedGraph complete_graph(int n);

// Star with `leaves` leaves, center 0, unit weights.
WeightedGraph star_graph(int leaves);

// Cycle on n vertices, unit weights.
WeightedGraph cycle_graph(int n);

struct LadderParams {
  // defaults keep every truncated-triangle escape margin > 1e-4 through depth 8:
  // besides the isoceles triangles, the scalene ones {over_n, under_{n+1}, over_{n+1}}
  // (n odd) only lose stability when q_n stays within ~sqrt(mu^n eta) q of p_{n+1},
  // so q is chosen to center that window over the truncation (q_5 ~ p_6)
  double p = 1.0;
  double q = 0.68;
  double eps = 0.01;
  double eta = 0.2;
  double mu = 0.5;
  int depth = 8;
  // p < 2q, eta > eps p / (2q - p), eta q e^{eta/(1-mu)} < p (1 - eps/(1-mu)),
  // eps/(1-mu) < 1, 0 < mu < 1; throws std::invalid_argument otherwise.
  void validate() const;
};

// Geometric edge-weight sequences p_n = p prod_{k<n}(1 - mu^k eps),
// q_n = q prod_{k<n}(1 + mu^k eta).
double ladder_p_n(const LadderParams& P, int n);
double ladder_q_n(const LadderParams& P, int n);

// Two-row ladder truncated at `depth`: vertices under_i = 2i, over_i = 2i+1
// for i = 0..depth; edges under-under, over-over, rungs under_i-over_i and
// diagonals over_i-under_{i+1}, weights per the alternating p/q assignment.
WeightedGraph ladder_ex2_graph(const LadderParams& P);

int ladder_under(int i);
int ladder_over(int i);

// Registry used by the CLI: example1 | triangle | ztrunc | zloop | ladder_ex2
// | k2 | star | cycle (parameters where applicable).
struct ScenarioParams {
  double a = 1.0, b = 1.0, c = 1.0;
  LadderParams ladder;
  int depth = 5;
};
WeightedGraph builtin_graph(const std::string& name, const ScenarioParams& sp);

}  // namespace vrrw
