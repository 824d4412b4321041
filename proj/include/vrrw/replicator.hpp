#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vrrw/graph.hpp"
#include "vrrw/simplex.hpp"

namespace vrrw {

// Local rates: N_i(x) = sum_{j ~ i} a(i,j) x_j, with a loop at i counted once.
Eigen::VectorXd N_vec(const WeightedGraph& g, const Eigen::VectorXd& x);
// Mean rate H(x) = sum_i x_i N_i(x); each loop pair counted once.
double H_val(const WeightedGraph& g, const Eigen::VectorXd& x);
// Vector field F_i(x) = x_i (N_i(x) - H(x)) of the replicator flow.
Eigen::VectorXd F_vec(const WeightedGraph& g, const Eigen::VectorXd& x);
// J(x) = 2 sum_i x_i (N_i - H)^2; equals dH/dt along the flow.
double J_val(const WeightedGraph& g, const Eigen::VectorXd& x);
// Edge-stationary law pi_i = x_i N_i / H; throws std::domain_error when H(x) = 0.
SimplexPoint pi_measure(const WeightedGraph& g, const SimplexPoint& x);

// Jacobian of F at an equilibrium x (|N_i - H| <= tol on the support,
// otherwise std::invalid_argument).
struct JacobianResult {
  Eigen::MatrixXd full;                 // DF(x), all of R^V
  VertexSet support;                    // S(x)
  Eigen::MatrixXd B;                    // [a(i,j) - 2H(x)] over S(x) x S(x)
  std::vector<double> off_support;      // N_i - H for i outside S(x), ascending id
  std::vector<double> tangent_spectrum; // eigenvalues of DF | {sum = 0}, ascending
};
JacobianResult jacobian_DF(const WeightedGraph& g, const SimplexPoint& x,
                           double tol = 1e-8);

enum class EquilibriumClass { not_equilibrium, unstable, stable, strictly_stable };
std::string to_string(EquilibriumClass c);

struct EquilibriumReport {
  SimplexPoint point;
  double H = 0.0;
  Eigen::VectorXd N;
  std::map<int, double> boundary_slack;      // i in outer boundary of S(x) -> N_i - H
  std::vector<double> B_spectrum;            // ascending
  std::vector<double> DF_spectrum;           // DF | {sum = 0}, ascending
  EquilibriumClass classification = EquilibriumClass::not_equilibrium;
  std::optional<PartitionDecomposition> partition;  // when S(x) decomposes
  int nullspace_dim = 0;                     // degeneracy of the support system
};

// Classifies x: not_equilibrium when max_{i in S(x)} |N_i - H| > tol; else
// stable iff max(Sp(B) union boundary slacks) <= tol, strictly stable when
// additionally every boundary slack < -tol.  Verifies that the sign of the
// tangent-spectrum maximum agrees with the B-criterion (dead band tol) and
// throws std::logic_error otherwise.
EquilibriumReport classify_equilibrium(const WeightedGraph& g, const SimplexPoint& x,
                                       double tol = 1e-8);

// Interior equilibrium of the weighted triangle (weights a = a(1,2),
// b = a(0,2), c = a(0,1)); requires strict triangle inequalities.
struct TriangleEquilibrium {
  SimplexPoint point;
  double H = 0.0;
};
TriangleEquilibrium solve_triangle_equilibrium(double a, double b, double c);

// Solves N_i(x) = h on S, sum x = 1 (least squares, min-norm particular
// solution).  nullspace_dim is the dimension of the solution manifold.
struct SupportSolve {
  SimplexPoint point;        // particular solution, zero off S
  double h = 0.0;
  int nullspace_dim = 0;
  bool consistent = false;   // residual tiny
  bool feasible = false;     // consistent and x >= 0 on S
  Eigen::MatrixXd nullspace; // |S|+1 columns-space basis of homogeneous solutions (x,h)
  VertexSet S;
};
SupportSolve solve_equilibrium_on_support(const WeightedGraph& g, const VertexSet& S);

// Fixed-step RK4 for dx/dt = F(x).  Negative round-off is clipped to 0 and the
// state renormalized after each step; zero coordinates stay zero, so the
// support never grows.  Aborts (std::runtime_error) if H decreases by more
// than 1e-9 in a step or the state leaves the simplex.
struct OdeTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<double> H_series;
  std::vector<double> J_series;
};
OdeTrajectory integrate_replicator(const WeightedGraph& g, const SimplexPoint& x0,
                                   double t_end, double dt = 1e-2);

// V_q(y) = -sum_{i in S(q)} q_i log(y_i / q_i) + 2 * sum_{i in boundary} y_i;
// +infinity when some y_i <= 0 on S(q).
double entropy_V(const SimplexPoint& q, const Eigen::VectorXd& y,
                 const VertexSet& boundary);

// I_q(y) = -sum_{S(q)} q_i (N_i(y) - H(y)) + 2 sum_{boundary of S(q)} y_i (N_i(y) - H(y)).
double I_q(const WeightedGraph& g, const SimplexPoint& q, const Eigen::VectorXd& y);

// Unit-weight stability test: loop-free support must be complete d-partite
// (d >= 2) with part masses 1/d and boundary rates N_j <= 1 - 1/d; a support
// with loops must be a clique of loops.  Throws std::invalid_argument when an
// edge touching S(x) has weight != 1.
bool theorem2_check(const WeightedGraph& g, const SimplexPoint& x, double tol = 1e-8);

}  // namespace vrrw
