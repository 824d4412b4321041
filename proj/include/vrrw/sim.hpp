#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "vrrw/graph.hpp"
#include "vrrw/replicator.hpp"
#include "vrrw/simplex.hpp"

namespace vrrw {

// Occupation state of the reinforced walk.  Z holds real-valued counts,
// seeded by a strictly positive Z0; each step adds 1 to the target vertex.
struct WalkState {
  std::vector<double> Z;
  int position = 0;
  long long n = 0;       // steps taken
  double n0 = 0.0;       // sum of Z0
  std::mt19937_64 rng;

  double total_mass() const { return static_cast<double>(n) + n0; }
  Eigen::VectorXd occupation() const;  // v(n) = Z / (n + n0)
};

WalkState make_walk(const WeightedGraph& g, const std::vector<double>& Z0,
                    int start_vertex, std::uint64_t seed);

// One transition: from i, choose j ~ i with probability proportional to
// a(i,j) Z(j), then reinforce j.  Throws std::runtime_error from a vertex
// with no incident edge.
void step(const WeightedGraph& g, WalkState& state);

struct RunConfig {
  WeightedGraph graph;
  std::vector<double> Z0;          // empty -> all ones
  int start_vertex = 0;
  long long total_steps = 0;
  std::vector<long long> snapshot_schedule;  // empty -> geometric grid (<= 64/decade)
  std::uint64_t seed = 0;
  std::optional<SimplexPoint> reference_q;   // enables entropy tracking
  bool track_z = false;                      // record corrected occupation z(n)
};

struct Snapshot {
  long long n = 0;
  Eigen::VectorXd v;
  double H = 0.0;
  std::optional<Eigen::VectorXd> z;
  std::optional<double> V_q;
  std::optional<double> I_q_val;
};

struct FitResult {
  double slope = 0.0;
  double stderr_ = 0.0;
};

struct LocalizationReport {
  VertexSet range_estimate;   // vertices visited in the final window
  VertexSet range_prev;       // ... in the window before it
  bool localized = false;     // ranges equal and a proper subset of V
  Eigen::VectorXd final_v;
  Eigen::VectorXd final_Z;
  std::map<int, FitResult> exponent_fits;  // log Z_i vs log n, last two decades
  std::vector<std::pair<long long, double>> entropy_series;  // (n, V_q(z(n)))
  std::vector<std::pair<long long, double>> H_series;
  std::vector<Snapshot> snapshots;
  long long total_steps = 0;
  long long window = 0;
  double n0 = 0.0;
  std::uint64_t seed = 0;
};

LocalizationReport run(const RunConfig& config);

// Geometric snapshot grid, at most 64 points per decade, always ending at
// total_steps.
std::vector<long long> default_schedule(long long total_steps);

// Predicted visit exponent N_j(y) / H(y) of a boundary vertex j of S(y);
// throws std::invalid_argument when j is not in the outer boundary.
double theoretical_exponent(const WeightedGraph& g, const SimplexPoint& y, int j);

struct DriftRow {
  long long n_begin = 0;
  long long n_end = 0;
  double measured = 0.0;    // windowed mean of Delta V_q(z(n))
  double predicted = 0.0;   // windowed mean of I_q(v(n)) / ((n + n0 + 1) H(v(n)))
};
// Requires a report produced with reference_q set (entropy series present).
std::vector<DriftRow> entropy_drift_check(const WeightedGraph& g, const SimplexPoint& q,
                                          const LocalizationReport& report,
                                          long long window_steps);

// Reinforced walk on {-K..K} with a unit loop at 0; occupation seeded to
// favor the origin.  Reports the scaling statistics of the localized regime:
// Z(0)/n, (Z(-1)+Z(1)) log n / n, the split alpha = Z(-1)/(Z(-1)+Z(1)), and
// Z(-2)/(log n)^alpha, Z(2)/(log n)^(1-alpha).
struct ZloopStats {
  double z0_over_n = 0.0;
  double z_pm1_logn_over_n = 0.0;
  double alpha = 0.0;
  double zm2_scaled = 0.0;
  double zp2_scaled = 0.0;
  bool localized_core = false;  // range settled inside {-2..2}
};
struct ZloopResult {
  LocalizationReport report;
  ZloopStats stats;
};
ZloopResult scenario_zloop(int K, long long total_steps, std::uint64_t seed);

}  // namespace vrrw
