#include "vrrw/replicator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vrrw {

Eigen::VectorXd N_vec(const WeightedGraph& g, const Eigen::VectorXd& x) {
  if (x.size() != g.vertex_count()) throw std::invalid_argument("dimension mismatch");
  return g.adjacency() * x;
}

double H_val(const WeightedGraph& g, const Eigen::VectorXd& x) {
  return x.dot(N_vec(g, x));
}

Eigen::VectorXd F_vec(const WeightedGraph& g, const Eigen::VectorXd& x) {
  const Eigen::VectorXd N = N_vec(g, x);
  const double H = x.dot(N);
  return x.cwiseProduct((N.array() - H).matrix());
}

double J_val(const WeightedGraph& g, const Eigen::VectorXd& x) {
  const Eigen::VectorXd N = N_vec(g, x);
  const double H = x.dot(N);
  double J = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double d = N[i] - H;
    J += x[i] * d * d;
  }
  return 2.0 * J;
}

SimplexPoint pi_measure(const WeightedGraph& g, const SimplexPoint& x) {
  const Eigen::VectorXd N = N_vec(g, x.values());
  const double H = x.values().dot(N);
  if (!(H > 0.0)) throw std::domain_error("pi_measure needs H(x) > 0");
  return SimplexPoint::normalized(x.values().cwiseProduct(N) / H);
}

JacobianResult jacobian_DF(const WeightedGraph& g, const SimplexPoint& x, double tol) {
  const int n = g.vertex_count();
  const Eigen::VectorXd& xv = x.values();
  if (xv.size() != n) throw std::invalid_argument("dimension mismatch");
  const Eigen::VectorXd N = N_vec(g, xv);
  const double H = xv.dot(N);
  JacobianResult res;
  res.support = x.support();
  for (int i : res.support)
    if (std::abs(N[i] - H) > tol)
      throw std::invalid_argument("jacobian_DF requires an equilibrium point");

  const Eigen::MatrixXd& A = g.adjacency();
  res.full.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      res.full(i, j) = (i == j ? N[i] - H : 0.0) + xv[i] * (A(i, j) - 2.0 * N[j]);

  const int m = static_cast<int>(res.support.size());
  res.B.resize(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      res.B(a, b) = A(res.support[a], res.support[b]) - 2.0 * H;

  std::vector<char> in_S(n, 0);
  for (int i : res.support) in_S[i] = 1;
  for (int i = 0; i < n; ++i)
    if (!in_S[i]) res.off_support.push_back(N[i] - H);

  // The S-block of DF is D B (D = Diag(x_i)), similar to the symmetric
  // D^{1/2} B D^{1/2}; x itself is its eigenvector with eigenvalue -H and the
  // rest of the spectrum lives on the tangent space {sum = 0}.
  res.tangent_spectrum = res.off_support;
  if (m > 0) {
    Eigen::VectorXd sq(m);
    for (int a = 0; a < m; ++a) sq[a] = std::sqrt(xv[res.support[a]]);
    const Eigen::MatrixXd W = sq.asDiagonal() * res.B * sq.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(W);
    const Eigen::VectorXd u = sq / sq.norm();  // image of x under the similarity
    int drop = 0;
    double best = -1.0;
    for (int k = 0; k < m; ++k) {
      const double overlap = std::abs(es.eigenvectors().col(k).dot(u));
      if (overlap > best) {
        best = overlap;
        drop = k;
      }
    }
    for (int k = 0; k < m; ++k)
      if (k != drop) res.tangent_spectrum.push_back(es.eigenvalues()[k]);
  }
  std::sort(res.tangent_spectrum.begin(), res.tangent_spectrum.end());
  return res;
}

std::string to_string(EquilibriumClass c) {
  switch (c) {
    case EquilibriumClass::not_equilibrium: return "not_equilibrium";
    case EquilibriumClass::unstable: return "unstable";
    case EquilibriumClass::stable: return "stable";
    case EquilibriumClass::strictly_stable: return "strictly_stable";
  }
  return "?";
}

EquilibriumReport classify_equilibrium(const WeightedGraph& g, const SimplexPoint& x,
                                       double tol) {
  EquilibriumReport rep;
  rep.point = x;
  rep.N = N_vec(g, x.values());
  rep.H = x.values().dot(rep.N);
  const VertexSet S = x.support();
  const VertexSet boundary = outer_boundary(g, S);
  for (int j : boundary) rep.boundary_slack[j] = rep.N[j] - rep.H;

  const auto dec = multipartite_decompose(g, S);
  if (dec.ok()) rep.partition = dec.partition;
  rep.nullspace_dim = solve_equilibrium_on_support(g, S).nullspace_dim;

  const int m = static_cast<int>(S.size());
  Eigen::MatrixXd B(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      B(a, b) = g.adjacency()(S[a], S[b]) - 2.0 * rep.H;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  rep.B_spectrum.assign(es.eigenvalues().data(), es.eigenvalues().data() + m);

  double eq_err = 0.0;
  for (int i : S) eq_err = std::max(eq_err, std::abs(rep.N[i] - rep.H));
  if (eq_err > tol) {
    rep.classification = EquilibriumClass::not_equilibrium;
    return rep;
  }

  if (rep.H < tol) {
    // no edge carries mass: infeasible, hence not stable
    rep.classification = EquilibriumClass::unstable;
    return rep;
  }

  const auto jac = jacobian_DF(g, x, tol);
  rep.DF_spectrum = jac.tangent_spectrum;

  double crit = rep.B_spectrum.empty() ? -std::numeric_limits<double>::infinity()
                                       : rep.B_spectrum.back();
  for (const auto& [j, slack] : rep.boundary_slack) crit = std::max(crit, slack);

  if (!rep.DF_spectrum.empty()) {
    const double tangent_max = rep.DF_spectrum.back();
    const auto band_sign = [tol](double v) { return v > tol ? 1 : (v < -tol ? -1 : 0); };
    if (band_sign(tangent_max) != band_sign(crit))
      throw std::logic_error("stability criteria disagree: tangent spectrum vs B-block");
  }

  if (crit > tol) {
    rep.classification = EquilibriumClass::unstable;
    return rep;
  }
  bool strict = true;
  for (const auto& [j, slack] : rep.boundary_slack) strict = strict && slack < -tol;
  rep.classification = strict ? EquilibriumClass::strictly_stable : EquilibriumClass::stable;
  return rep;
}

TriangleEquilibrium solve_triangle_equilibrium(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
    throw std::invalid_argument("triangle weights must be positive");
  if (!(a < b + c) || !(b < a + c) || !(c < a + b))
    throw std::invalid_argument("strict triangle inequalities required");
  const double s = a + b + c;
  const double delta = s * s - 2.0 * (a * a + b * b + c * c);
  Eigen::VectorXd x(3);
  // each vertex is weighted by its opposite edge: x = M^{-1} 1 / (1' M^{-1} 1)
  x << a * (b + c - a) / delta, b * (a + c - b) / delta, c * (a + b - c) / delta;
  TriangleEquilibrium eq{SimplexPoint::normalized(x), 2.0 * a * b * c / delta};
  // cross-check against the vector field on the triangle itself
  Eigen::MatrixXd A(3, 3);
  A << 0, c, b, c, 0, a, b, a, 0;
  const Eigen::VectorXd N = A * eq.point.values();
  const double H = eq.point.values().dot(N);
  for (int i = 0; i < 3; ++i)
    if (std::abs(eq.point[i] * (N[i] - H)) > 1e-12 * std::max(1.0, H))
      throw std::logic_error("triangle equilibrium failed verification");
  return eq;
}

SupportSolve solve_equilibrium_on_support(const WeightedGraph& g, const VertexSet& S) {
  const int m = static_cast<int>(S.size());
  if (m == 0) throw std::invalid_argument("support must be nonempty");
  Eigen::MatrixXd A(m + 1, m + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 1);
  A.setZero();
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) A(r, c) = g.adjacency()(S[r], S[c]);
    A(r, m) = -1.0;  // N_i(x) - h = 0
  }
  for (int c = 0; c < m; ++c) A(m, c) = 1.0;  // sum x = 1
  b[m] = 1.0;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smax = svd.singularValues()[0];
  const double thresh = std::max(smax, 1.0) * 1e-10;
  int rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()[k] > thresh) ++rank;

  Eigen::VectorXd inv = Eigen::VectorXd::Zero(m + 1);
  for (int k = 0; k < rank; ++k) inv[k] = 1.0 / svd.singularValues()[k];
  const Eigen::VectorXd sol =
      svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose() * b;

  SupportSolve out;
  out.S = S;
  out.h = sol[m];
  out.nullspace_dim = (m + 1) - rank;
  out.nullspace = svd.matrixV().rightCols(out.nullspace_dim);
  out.consistent = (A * sol - b).cwiseAbs().maxCoeff() <= 1e-8;
  bool nonneg = true;
  for (int k = 0; k < m; ++k) nonneg = nonneg && sol[k] >= -1e-12;
  out.feasible = out.consistent && nonneg;
  if (out.feasible) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(g.vertex_count());
    for (int k = 0; k < m; ++k) full[S[k]] = std::max(sol[k], 0.0);
    out.point = SimplexPoint::normalized(std::move(full));
  }
  return out;
}

OdeTrajectory integrate_replicator(const WeightedGraph& g, const SimplexPoint& x0,
                                   double t_end, double dt) {
  if (!(t_end >= 0.0) || !(dt > 0.0)) throw std::invalid_argument("bad integration window");
  OdeTrajectory traj;
  Eigen::VectorXd x = x0.values();
  const long long steps = static_cast<long long>(std::ceil(t_end / dt - 1e-12));
  traj.times.reserve(steps + 1);
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.H_series.push_back(H_val(g, x));
    traj.J_series.push_back(J_val(g, x));
  };
  record(0.0);
  for (long long s = 0; s < steps; ++s) {
    const double H_before = traj.H_series.back();
    const Eigen::VectorXd k1 = F_vec(g, x);
    const Eigen::VectorXd k2 = F_vec(g, x + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = F_vec(g, x + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = F_vec(g, x + dt * k3);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (!std::isfinite(x[i])) throw std::runtime_error("replicator state diverged");
      if (x[i] < 0.0) x[i] = 0.0;  // round-off at the boundary
      sum += x[i];
    }
    if (!(sum > 0.0)) throw std::runtime_error("replicator state left the simplex");
    x /= sum;
    record(dt * static_cast<double>(s + 1));
    if (traj.H_series.back() < H_before - 1e-9)
      throw std::runtime_error("H decreased along the replicator flow");
  }
  return traj;
}

double entropy_V(const SimplexPoint& q, const Eigen::VectorXd& y, const VertexSet& boundary) {
  if (y.size() != q.size()) throw std::invalid_argument("dimension mismatch");
  double V = 0.0;
  for (int i : q.support()) {
    if (!(y[i] > 0.0)) return std::numeric_limits<double>::infinity();
    V -= q[i] * std::log(y[i] / q[i]);
  }
  for (int i : boundary) V += 2.0 * y[i];
  return V;
}

double I_q(const WeightedGraph& g, const SimplexPoint& q, const Eigen::VectorXd& y) {
  const Eigen::VectorXd N = N_vec(g, y);
  const double H = y.dot(N);
  const VertexSet S = q.support();
  double I = 0.0;
  for (int i : S) I -= q[i] * (N[i] - H);
  for (int i : outer_boundary(g, S)) I += 2.0 * y[i] * (N[i] - H);
  return I;
}

bool theorem2_check(const WeightedGraph& g, const SimplexPoint& x, double tol) {
  const VertexSet S = x.support();
  std::vector<char> in_S(g.vertex_count(), 0);
  for (int i : S) in_S[i] = 1;
  for (const auto& e : g.edges())
    if ((in_S[e.u] || in_S[e.v]) && std::abs(e.weight - 1.0) > 1e-9)
      throw std::invalid_argument("theorem2_check requires unit weights near the support");

  bool any_loop = false;
  for (int i : S) any_loop = any_loop || g.has_loop(i);
  if (any_loop) {
    for (int i : S)
      if (!g.has_loop(i)) return false;
    for (std::size_t a = 0; a < S.size(); ++a)
      for (std::size_t b = a + 1; b < S.size(); ++b)
        if (!g.adjacent(S[a], S[b])) return false;
    return true;  // clique of loops: N == 1 == H on S, N <= 1 everywhere
  }

  const auto dec = multipartite_decompose(g, S);
  if (!dec.ok()) return false;
  const auto& parts = dec.partition->parts;
  const int d = static_cast<int>(parts.size());
  if (d < 2) return false;
  for (const auto& part : parts) {
    double mass = 0.0;
    for (int i : part) mass += x[i];
    if (std::abs(mass - 1.0 / d) > tol) return false;
  }
  const Eigen::VectorXd N = N_vec(g, x.values());
  for (int j : outer_boundary(g, S))
    if (N[j] > 1.0 - 1.0 / d + tol) return false;
  return true;
}

}  // namespace vrrw
