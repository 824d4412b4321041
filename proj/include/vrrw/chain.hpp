#pragma once

#include <Eigen/Dense>

#include "vrrw/graph.hpp"
#include "vrrw/simplex.hpp"

namespace vrrw {

// Frozen-occupation Markov chain M(v)(i,j) = a(i,j) v_j / sum_k a(i,k) v_k,
// its stationary law pi(v) and the solution Q of the Poisson equation
// (I - M) Q = I - 1 pi^T with pi Q = 0, Q 1 = 0.
struct ChainOperators {
  Eigen::MatrixXd M;
  Eigen::VectorXd pi;
  Eigen::MatrixXd Q;
};

// Throws std::domain_error when some vertex sees zero v-mass on its
// neighborhood (zero row denominator) or H(v) = 0.
ChainOperators build_chain(const WeightedGraph& g, const SimplexPoint& v);

// Smallest nonzero eigenvalue of I - M, self-adjoint in l2(pi); equals the
// minimum of the Dirichlet form over Var_pi(f) = 1.
double spectral_gap(const ChainOperators& chain);

// z(n) = v(n) + (M Q)(row X_n) / (n + n0); the correction row sums to zero.
Eigen::VectorXd z_corrector(const ChainOperators& chain, const SimplexPoint& v,
                            int current_vertex, double n, double n0);

// residual = z_next - z - F(z) / ((n + n0 + 1) H(v)); the expected one-step
// drift is removed, leaving martingale noise plus O(1/n^2).
Eigen::VectorXd drift_residual(const WeightedGraph& g, const Eigen::VectorXd& v,
                               const Eigen::VectorXd& z_next, const Eigen::VectorXd& z,
                               double n, double n0);

// Region predicate for v: v_j >= alpha for every j in S.
struct RegionPredicate {
  VertexSet S;
  double alpha = 0.0;
  bool contains(const Eigen::VectorXd& v) const;
};

}  // namespace vrrw
