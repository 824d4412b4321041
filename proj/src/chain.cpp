#include "vrrw/chain.hpp"

#include <cmath>
#include <stdexcept>

#include "vrrw/replicator.hpp"

namespace vrrw {

ChainOperators build_chain(const WeightedGraph& g, const SimplexPoint& v) {
  const int n = g.vertex_count();
  if (v.size() != n) throw std::invalid_argument("dimension mismatch");
  const Eigen::VectorXd N = N_vec(g, v.values());
  const double H = v.values().dot(N);
  if (!(H > 0.0)) throw std::domain_error("build_chain needs H(v) > 0");
  ChainOperators ops;
  ops.M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (!(N[i] > 0.0))
      throw std::domain_error("vertex " + std::to_string(i) +
                              " sees zero occupation mass on its neighborhood");
    for (const auto& [j, a] : g.neighbors(i)) ops.M(i, j) = a * v[j] / N[i];
  }
  ops.pi = v.values().cwiseProduct(N) / H;

  // deviation matrix: Q = (I - M + 1 pi^T)^{-1} - 1 pi^T solves
  // (I - M) Q = I - 1 pi^T with pi^T Q = 0 and Q 1 = 0
  const Eigen::MatrixXd Pi = Eigen::VectorXd::Ones(n) * ops.pi.transpose();
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - ops.M + Pi;
  ops.Q = A.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n)) - Pi;
  return ops;
}

double spectral_gap(const ChainOperators& chain) {
  const int n = static_cast<int>(chain.M.rows());
  if (n < 2) throw std::invalid_argument("spectral gap needs at least two states");
  // symmetrize I - M by the pi-similarity; reversibility makes this exact
  Eigen::VectorXd sq(n);
  for (int i = 0; i < n; ++i) {
    if (!(chain.pi[i] > 0.0)) throw std::domain_error("stationary law must be positive");
    sq[i] = std::sqrt(chain.pi[i]);
  }
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n) -
                      sq.asDiagonal() * chain.M * sq.cwiseInverse().asDiagonal();
  L = 0.5 * (L + L.transpose());  // clean off round-off asymmetry
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  return es.eigenvalues()[1];
}

Eigen::VectorXd z_corrector(const ChainOperators& chain, const SimplexPoint& v,
                            int current_vertex, double n, double n0) {
  if (current_vertex < 0 || current_vertex >= chain.M.rows())
    throw std::invalid_argument("current vertex out of range");
  if (!(n + n0 > 0.0)) throw std::invalid_argument("n + n0 must be positive");
  const Eigen::VectorXd correction =
      (chain.M.row(current_vertex) * chain.Q).transpose() / (n + n0);
  return v.values() + correction;
}

Eigen::VectorXd drift_residual(const WeightedGraph& g, const Eigen::VectorXd& v,
                               const Eigen::VectorXd& z_next, const Eigen::VectorXd& z,
                               double n, double n0) {
  const double H = H_val(g, v);
  if (!(H > 0.0)) throw std::domain_error("drift_residual needs H(v) > 0");
  const Eigen::VectorXd drift = F_vec(g, z) / ((n + n0 + 1.0) * H);
  return z_next - z - drift;
}

bool RegionPredicate::contains(const Eigen::VectorXd& v) const {
  for (int j : S) {
    if (j < 0 || j >= v.size()) throw std::invalid_argument("region vertex out of range");
    if (v[j] < alpha) return false;
  }
  return true;
}

}  // namespace vrrw
