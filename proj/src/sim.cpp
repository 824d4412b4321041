#include "vrrw/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vrrw/chain.hpp"
#include "vrrw/scenarios.hpp"

namespace vrrw {

namespace {

// uniform in [0,1) from the top 53 bits; keeps runs bit-reproducible
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Eigen::VectorXd WalkState::occupation() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(Z.size()));
  const double scale = 1.0 / total_mass();
  for (std::size_t i = 0; i < Z.size(); ++i) v[static_cast<Eigen::Index>(i)] = Z[i] * scale;
  return v;
}

WalkState make_walk(const WeightedGraph& g, const std::vector<double>& Z0,
                    int start_vertex, std::uint64_t seed) {
  WalkState st;
  st.Z = Z0.empty() ? std::vector<double>(g.vertex_count(), 1.0) : Z0;
  if (static_cast<int>(st.Z.size()) != g.vertex_count())
    throw std::invalid_argument("Z0 size must match vertex_count");
  st.n0 = 0.0;
  for (double z : st.Z) {
    if (!(z > 0.0)) throw std::invalid_argument("Z0 must be strictly positive");
    st.n0 += z;
  }
  if (start_vertex < 0 || start_vertex >= g.vertex_count())
    throw std::invalid_argument("start vertex out of range");
  st.position = start_vertex;
  st.n = 0;
  st.rng.seed(seed);
  return st;
}

void step(const WeightedGraph& g, WalkState& state) {
  const auto& nb = g.neighbors(state.position);
  if (nb.empty()) throw std::runtime_error("walk stuck at an isolated vertex");
  double total = 0.0;
  for (const auto& [j, a] : nb) total += a * state.Z[j];
  const double r = uniform01(state.rng) * total;
  double acc = 0.0;
  int target = nb.back().first;
  for (const auto& [j, a] : nb) {
    acc += a * state.Z[j];
    if (r < acc) {
      target = j;
      break;
    }
  }
  state.Z[target] += 1.0;
  state.position = target;
  ++state.n;
}

std::vector<long long> default_schedule(long long total_steps) {
  std::vector<long long> sched;
  if (total_steps <= 0) return sched;
  const double per_decade = 64.0;
  long long last = 0;
  for (int k = 0;; ++k) {
    const long long n =
        static_cast<long long>(std::llround(std::pow(10.0, static_cast<double>(k) / per_decade)));
    if (n >= total_steps) break;
    if (n > last) {
      sched.push_back(n);
      last = n;
    }
  }
  sched.push_back(total_steps);
  return sched;
}

namespace {

FitResult ols_loglog(const std::vector<double>& logn, const std::vector<double>& logZ) {
  FitResult fit;
  const std::size_t m = logn.size();
  if (m < 3) return fit;
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    sx += logn[k];
    sy += logZ[k];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    sxx += (logn[k] - mx) * (logn[k] - mx);
    sxy += (logn[k] - mx) * (logZ[k] - my);
  }
  if (sxx <= 0) return fit;
  fit.slope = sxy / sxx;
  double rss = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double resid = logZ[k] - my - fit.slope * (logn[k] - mx);
    rss += resid * resid;
  }
  fit.stderr_ = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
  return fit;
}

}  // namespace

LocalizationReport run(const RunConfig& config) {
  const WeightedGraph& g = config.graph;
  validate(g);
  if (config.total_steps <= 0) throw std::invalid_argument("total_steps must be positive");
  WalkState st = make_walk(g, config.Z0, config.start_vertex, config.seed);

  std::vector<long long> schedule =
      config.snapshot_schedule.empty() ? default_schedule(config.total_steps)
                                       : config.snapshot_schedule;
  if (schedule.empty() || schedule.back() != config.total_steps ||
      !std::is_sorted(schedule.begin(), schedule.end()))
    throw std::invalid_argument("snapshot schedule must be sorted and end at total_steps");

  LocalizationReport rep;
  rep.total_steps = config.total_steps;
  rep.n0 = st.n0;
  rep.seed = config.seed;
  const long long T = config.total_steps;
  long long W = std::max<long long>(T / 10, 10000);
  W = std::min(W, T / 2);
  W = std::max<long long>(W, 1);
  rep.window = W;
  std::vector<long long> visits_prev(g.vertex_count(), 0), visits_final(g.vertex_count(), 0);

  const bool want_z = config.track_z || config.reference_q.has_value();
  VertexSet q_boundary;
  if (config.reference_q)
    q_boundary = outer_boundary(g, config.reference_q->support());

  std::size_t next_snap = 0;
  auto take_snapshot = [&](long long n) {
    Snapshot snap;
    snap.n = n;
    snap.v = st.occupation();
    snap.H = H_val(g, snap.v);
    if (want_z) {
      const SimplexPoint v_pt(snap.v);
      const ChainOperators chain = build_chain(g, v_pt);
      snap.z = z_corrector(chain, v_pt, st.position, static_cast<double>(n), st.n0);
      if (config.reference_q) {
        snap.V_q = entropy_V(*config.reference_q, *snap.z, q_boundary);
        snap.I_q_val = I_q(g, *config.reference_q, snap.v);
        rep.entropy_series.push_back({n, *snap.V_q});
      }
    }
    rep.H_series.push_back({n, snap.H});
    rep.snapshots.push_back(std::move(snap));
  };

  for (long long n = 1; n <= T; ++n) {
    step(g, st);
    if (n > T - W)
      ++visits_final[st.position];
    else if (n > T - 2 * W)
      ++visits_prev[st.position];
    while (next_snap < schedule.size() && schedule[next_snap] == n) {
      take_snapshot(n);
      ++next_snap;
    }
  }

  rep.final_v = st.occupation();
  rep.final_Z.resize(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) rep.final_Z[i] = st.Z[i];
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (visits_final[i] > 0) rep.range_estimate.push_back(i);
    if (visits_prev[i] > 0) rep.range_prev.push_back(i);
  }
  rep.localized = rep.range_estimate == rep.range_prev &&
                  static_cast<int>(rep.range_estimate.size()) < g.vertex_count();

  // visit exponents from the last two decades of snapshots
  const double n_min = static_cast<double>(T) / 100.0;
  for (int i = 0; i < g.vertex_count(); ++i) {
    std::vector<double> xs, ys;
    for (const auto& snap : rep.snapshots) {
      if (static_cast<double>(snap.n) < n_min) continue;
      const double Zi = snap.v[i] * (static_cast<double>(snap.n) + st.n0);
      xs.push_back(std::log(static_cast<double>(snap.n)));
      ys.push_back(std::log(Zi));
    }
    rep.exponent_fits[i] = ols_loglog(xs, ys);
  }
  return rep;
}

double theoretical_exponent(const WeightedGraph& g, const SimplexPoint& y, int j) {
  const VertexSet S = y.support();
  const VertexSet boundary = outer_boundary(g, S);
  if (!std::binary_search(boundary.begin(), boundary.end(), j))
    throw std::invalid_argument("vertex is not on the outer boundary of the support");
  const Eigen::VectorXd N = N_vec(g, y.values());
  const double H = y.values().dot(N);
  if (!(H > 0.0)) throw std::domain_error("H(y) must be positive");
  return N[j] / H;
}

std::vector<DriftRow> entropy_drift_check(const WeightedGraph& g, const SimplexPoint& q,
                                          const LocalizationReport& report,
                                          long long window_steps) {
  if (report.entropy_series.empty())
    throw std::invalid_argument("report carries no entropy series (set reference_q)");
  if (window_steps <= 0) throw std::invalid_argument("window must be positive");
  const auto& snaps = report.snapshots;
  std::vector<DriftRow> rows;
  std::size_t ia = 0;
  for (long long w0 = 0; w0 + window_steps <= report.total_steps; w0 += window_steps) {
    const long long w1 = w0 + window_steps;
    while (ia < snaps.size() && snaps[ia].n < w0) ++ia;
    std::size_t ib = ia;
    while (ib < snaps.size() && snaps[ib].n < w1) ++ib;
    if (ib >= snaps.size() || ia == ib) continue;
    if (!snaps[ia].V_q || !snaps[ib].V_q) continue;
    if (!std::isfinite(*snaps[ia].V_q) || !std::isfinite(*snaps[ib].V_q)) continue;
    DriftRow row;
    row.n_begin = snaps[ia].n;
    row.n_end = snaps[ib].n;
    row.measured = (*snaps[ib].V_q - *snaps[ia].V_q) /
                   static_cast<double>(snaps[ib].n - snaps[ia].n);
    double acc = 0.0;
    int cnt = 0;
    for (std::size_t k = ia; k < ib; ++k) {
      if (!snaps[k].I_q_val) continue;
      acc += *snaps[k].I_q_val /
             ((static_cast<double>(snaps[k].n) + report.n0 + 1.0) * snaps[k].H);
      ++cnt;
    }
    if (cnt == 0) continue;
    row.predicted = acc / cnt;
    rows.push_back(row);
  }
  return rows;
}

ZloopResult scenario_zloop(int K, long long total_steps, std::uint64_t seed) {
  if (K < 4) throw std::invalid_argument("zloop scenario needs K >= 4");
  RunConfig cfg;
  cfg.graph = zloop_graph(K);
  cfg.Z0.assign(2 * K + 1, 1.0);
  cfg.Z0[K] = 50.0;
  cfg.Z0[K - 1] = 5.0;
  cfg.Z0[K + 1] = 5.0;
  cfg.start_vertex = K;
  cfg.total_steps = total_steps;
  cfg.seed = seed;

  ZloopResult out;
  out.report = run(cfg);
  const double n = static_cast<double>(total_steps);
  const double logn = std::log(n);
  const Eigen::VectorXd& Z = out.report.final_Z;
  out.stats.z0_over_n = Z[K] / n;
  const double zm1 = Z[K - 1], zp1 = Z[K + 1];
  out.stats.z_pm1_logn_over_n = (zm1 + zp1) * logn / n;
  out.stats.alpha = zm1 / (zm1 + zp1);
  out.stats.zm2_scaled = Z[K - 2] / std::pow(logn, out.stats.alpha);
  out.stats.zp2_scaled = Z[K + 2] / std::pow(logn, 1.0 - out.stats.alpha);
  const auto& range = out.report.range_estimate;
  out.stats.localized_core =
      out.report.localized && !range.empty() && range.front() >= K - 2 && range.back() <= K + 2;
  return out;
}

}  // namespace vrrw
