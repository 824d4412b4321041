#include "vrrw/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace vrrw {

WeightedGraph example1_graph() {
  WeightedGraph g(6);
  g.add_edge(0, 1, 1.0);  // A-B
  g.add_edge(1, 2, 1.0);  // B-C
  g.add_edge(2, 3, 1.0);  // C-D
  g.add_edge(0, 3, 1.0);  // A-D
  g.add_edge(2, 4, 1.0);  // C-E
  g.add_edge(3, 4, 1.0);  // D-E
  g.add_edge(4, 5, 1.0);  // E-F
  g.set_names({"A", "B", "C", "D", "E", "F"});
  return g;
}

SimplexPoint example1_point() {
  Eigen::VectorXd x(6);
  x << 3.0 / 8, 3.0 / 8, 1.0 / 8, 1.0 / 8, 0.0, 0.0;
  return SimplexPoint(std::move(x));
}

WeightedGraph triangle_graph(double a, double b, double c) {
  WeightedGraph g(3);
  g.add_edge(1, 2, a);
  g.add_edge(0, 2, b);
  g.add_edge(0, 1, c);
  return g;
}

WeightedGraph ztrunc_graph(int K) {
  if (K < 1) throw std::invalid_argument("ztrunc needs K >= 1");
  WeightedGraph g(2 * K + 1);
  for (int i = 0; i < 2 * K; ++i) g.add_edge(i, i + 1, 1.0);
  return g;
}

WeightedGraph zloop_graph(int K) {
  if (K < 4) throw std::invalid_argument("zloop needs K >= 4");
  WeightedGraph g = ztrunc_graph(K);
  g.add_edge(K, K, 1.0);
  return g;
}

WeightedGraph complete_graph(int n) {
  if (n < 2) throw std::invalid_argument("complete graph needs n >= 2");
  WeightedGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j, 1.0);
  return g;
}

WeightedGraph star_graph(int leaves) {
  if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
  WeightedGraph g(leaves + 1);
  for (int l = 1; l <= leaves; ++l) g.add_edge(0, l, 1.0);
  return g;
}

WeightedGraph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  WeightedGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, 1.0);
  g.add_edge(0, n - 1, 1.0);
  return g;
}

void LadderParams::validate() const {
  if (!(p > 0) || !(q > 0) || !(eps > 0) || !(eta > 0))
    throw std::invalid_argument("ladder parameters must be positive");
  if (!(mu > 0) || !(mu < 1)) throw std::invalid_argument("need 0 < mu < 1");
  if (!(eps / (1.0 - mu) < 1.0)) throw std::invalid_argument("need eps/(1-mu) < 1");
  if (!(p < 2.0 * q)) throw std::invalid_argument("need p < 2q");
  if (!(eta > eps * p / (2.0 * q - p)))
    throw std::invalid_argument("need eta > eps*p/(2q-p)");
  if (!(eta * q * std::exp(eta / (1.0 - mu)) < p * (1.0 - eps / (1.0 - mu))))
    throw std::invalid_argument("need eta*q*e^{eta/(1-mu)} < p*(1-eps/(1-mu))");
  if (depth < 2) throw std::invalid_argument("ladder depth must be >= 2");
}

double ladder_p_n(const LadderParams& P, int n) {
  double value = P.p;
  double muk = 1.0;
  for (int k = 0; k < n; ++k) {
    value *= 1.0 - muk * P.eps;
    muk *= P.mu;
  }
  return value;
}

double ladder_q_n(const LadderParams& P, int n) {
  double value = P.q;
  double muk = 1.0;
  for (int k = 0; k < n; ++k) {
    value *= 1.0 + muk * P.eta;
    muk *= P.mu;
  }
  return value;
}

int ladder_under(int i) { return 2 * i; }
int ladder_over(int i) { return 2 * i + 1; }

WeightedGraph ladder_ex2_graph(const LadderParams& P) {
  P.validate();
  const int D = P.depth;
  WeightedGraph g(2 * (D + 1));
  std::vector<std::string> names(2 * (D + 1));
  for (int i = 0; i <= D; ++i) {
    names[ladder_under(i)] = "under" + std::to_string(i);
    names[ladder_over(i)] = "over" + std::to_string(i);
  }
  auto add = [&](int u, int v, double w) {
    if (u > v) std::swap(u, v);
    g.add_edge(u, v, w);
  };
  // rungs and alternating bottom/top/diagonal weights
  for (int i = 0; i <= D; ++i) {
    const double w = (i % 2 == 0) ? ladder_q_n(P, i) : ladder_p_n(P, i);
    add(ladder_under(i), ladder_over(i), w);  // q_i at even rungs, p_i at odd
  }
  for (int i = 0; i + 1 <= D; ++i) {
    const double bw = (i % 2 == 0) ? ladder_p_n(P, i) : ladder_q_n(P, i);
    add(ladder_under(i), ladder_under(i + 1), bw);  // bottom: p_i even, q_i odd
    const double tw = (i % 2 == 0) ? ladder_q_n(P, i + 1) : ladder_p_n(P, i + 1);
    add(ladder_over(i), ladder_over(i + 1), tw);  // top: q_{i+1} even, p_{i+1} odd
    add(ladder_over(i), ladder_under(i + 1), ladder_q_n(P, i));  // diagonal: q_i
  }
  g.set_names(std::move(names));
  return g;
}

WeightedGraph builtin_graph(const std::string& name, const ScenarioParams& sp) {
  if (name == "example1") return example1_graph();
  if (name == "triangle") return triangle_graph(sp.a, sp.b, sp.c);
  if (name == "ztrunc") return ztrunc_graph(sp.depth);
  if (name == "zloop") return zloop_graph(sp.depth);
  if (name == "ladder_ex2") return ladder_ex2_graph(sp.ladder);
  if (name == "k2") {
    WeightedGraph g(2);
    g.add_edge(0, 1, 1.0);
    return g;
  }
  if (name == "star") return star_graph(sp.depth);
  if (name == "cycle") return cycle_graph(sp.depth);
  throw std::invalid_argument("unknown builtin graph: " + name);
}

}  // namespace vrrw
