#include "vrrw/cli_ops.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace vrrw {

namespace {

const std::set<std::string> kCommands = {"analyze", "trap",  "ode",      "simulate",
                                         "zloop",   "ladder_ex2", "triangle"};

std::string join_ids(const VertexSet& S) {
  std::string out;
  for (std::size_t k = 0; k < S.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(S[k]);
  }
  return out;
}

void emit(const ExperimentConfig& cfg, const std::string& filename,
          const nlohmann::ordered_json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (cfg.out_dir.empty()) {
    std::cout << text;
  } else {
    write_file(cfg.out_dir + "/" + filename, text);
  }
}

// deterministic seeded search over the solution manifold for a strictly
// stable representative (degenerate stable families only)
std::optional<EquilibriumReport> strict_representative(const WeightedGraph& g,
                                                       const SupportSolve& solve) {
  const int m = static_cast<int>(solve.S.size());
  const int d = solve.nullspace_dim;
  if (d == 0 || !solve.feasible) return std::nullopt;
  const Eigen::MatrixXd dirs = solve.nullspace.topRows(m);
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (int v : solve.S) h = h * 1099511628211ull + static_cast<std::uint64_t>(v);
  std::mt19937_64 rng(h);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::optional<EquilibriumReport> best;
  double best_margin = 0.0;
  Eigen::VectorXd base(m);
  for (int k = 0; k < m; ++k) base[k] = solve.point[solve.S[k]];
  for (double scale : {0.5, 0.25, 0.1, 0.05, 0.02}) {
    for (int iter = 0; iter < 200; ++iter) {
      Eigen::VectorXd c(d);
      for (int k = 0; k < d; ++k) c[k] = scale * gauss(rng);
      const Eigen::VectorXd xs = base + dirs * c;
      if (xs.minCoeff() < 1e-6) continue;
      Eigen::VectorXd full = Eigen::VectorXd::Zero(g.vertex_count());
      for (int k = 0; k < m; ++k) full[solve.S[k]] = xs[k];
      EquilibriumReport rep;
      try {
        rep = classify_equilibrium(g, SimplexPoint::normalized(std::move(full)));
      } catch (const std::exception&) {
        continue;
      }
      if (rep.classification != EquilibriumClass::strictly_stable) continue;
      double margin = std::numeric_limits<double>::infinity();
      for (const auto& [j, slack] : rep.boundary_slack) margin = std::min(margin, -slack);
      if (!best || margin > best_margin) {
        best = rep;
        best_margin = margin;
      }
    }
    if (best) break;
  }
  return best;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!kCommands.count(command)) throw std::invalid_argument("unknown command: " + command);
  if (runs < 1) throw std::invalid_argument("--runs must be >= 1");
  if (steps < 1) throw std::invalid_argument("--steps must be >= 1");
  if (support_cap < 1) throw std::invalid_argument("--support-cap must be >= 1");
  if (graph_path && builtin)
    throw std::invalid_argument("--graph and --scenario are mutually exclusive");
  const bool needs_graph =
      command == "analyze" || command == "trap" || command == "ode" || command == "simulate";
  if (needs_graph && !graph_path && !builtin)
    throw std::invalid_argument(command + " needs --graph or --scenario");
  if (!needs_graph && (graph_path || builtin))
    throw std::invalid_argument(command + " does not take --graph/--scenario");
  if (command == "ladder_ex2" || (builtin && *builtin == "ladder_ex2"))
    params.ladder.validate();
}

WeightedGraph ExperimentConfig::resolve_graph() const {
  if (graph_path) return load_graph(*graph_path);
  if (builtin) return builtin_graph(*builtin, params);
  throw std::invalid_argument("no graph source configured");
}

std::vector<CatalogueEntry> equilibrium_catalogue(const WeightedGraph& g, int support_cap) {
  validate(g);
  const int n = g.vertex_count();
  const int cap = std::min(support_cap, n);
  std::vector<CatalogueEntry> entries;
  VertexSet S;
  auto consider = [&]() {
    SupportSolve solve = solve_equilibrium_on_support(g, S);
    if (!solve.feasible) return;
    bool full_support = true;
    for (int v : S) full_support = full_support && solve.point[v] > kSupportEpsilon;
    if (!full_support) return;  // lives on a smaller support, found there
    CatalogueEntry entry;
    entry.report = classify_equilibrium(g, solve.point);
    entry.solve = std::move(solve);
    if (entry.report.classification == EquilibriumClass::stable &&
        entry.solve.nullspace_dim > 0)
      entry.strict_representative = strict_representative(g, entry.solve);
    entries.push_back(std::move(entry));
  };
  auto rec = [&](auto&& self, int from, int remaining) -> void {
    if (!S.empty()) consider();
    if (remaining == 0) return;
    for (int v = from; v < n; ++v) {
      S.push_back(v);
      self(self, v + 1, remaining - 1);
      S.pop_back();
    }
  };
  rec(rec, 0, cap);
  std::sort(entries.begin(), entries.end(), [](const CatalogueEntry& a, const CatalogueEntry& b) {
    if (a.report.H != b.report.H) return a.report.H < b.report.H;
    return a.solve.S < b.solve.S;
  });
  return entries;
}

std::vector<TrapReport> trap_catalogue(const WeightedGraph& g) {
  validate(g);
  std::set<VertexSet> seen;
  std::vector<TrapReport> out;
  std::vector<const Edge*> edges;
  for (const auto& e : g.edges())
    if (e.u != e.v) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const Edge* a, const Edge* b) {
    return std::tie(a->u, a->v) < std::tie(b->u, b->v);
  });
  for (const Edge* e : edges) {
    const auto res = find_trapping_volkov(g, e->u, e->v);
    if (res && seen.insert(res->S).second) out.push_back(*res);
  }
  std::sort(out.begin(), out.end(),
            [](const TrapReport& a, const TrapReport& b) { return a.S < b.S; });
  return out;
}

SimulationSummary run_many(const RunConfig& base, int runs, std::uint64_t base_seed) {
  SimulationSummary sum;
  sum.reports.resize(runs);
  const unsigned threads =
      std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(runs)));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= runs) return;
      RunConfig cfg = base;
      cfg.seed = base_seed ^ static_cast<std::uint64_t>(r);
      sum.reports[r] = run(cfg);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  int localized = 0;
  std::map<std::string, int> histogram;
  std::map<int, std::vector<double>> slopes;
  for (const auto& rep : sum.reports) {
    if (rep.localized) {
      ++localized;
      for (const auto& [v, fit] : rep.exponent_fits) slopes[v].push_back(fit.slope);
    }
    ++histogram[join_ids(rep.range_estimate)];
  }
  nlohmann::ordered_json doc;
  doc["runs"] = runs;
  doc["total_steps"] = base.total_steps;
  doc["base_seed"] = base_seed;
  doc["localization_frequency"] = r17(static_cast<double>(localized) / runs);
  doc["localized_runs"] = localized;
  auto hist = nlohmann::ordered_json::object();
  for (const auto& [range, count] : histogram) hist[range] = count;
  doc["range_histogram"] = std::move(hist);
  auto expo = nlohmann::ordered_json::object();
  for (const auto& [v, vals] : slopes) {
    double mean = 0.0;
    for (double s : vals) mean += s;
    mean /= static_cast<double>(vals.size());
    double var = 0.0;
    for (double s : vals) var += (s - mean) * (s - mean);
    var = vals.size() > 1 ? var / static_cast<double>(vals.size() - 1) : 0.0;
    nlohmann::ordered_json row;
    row["mean_slope"] = r17(mean);
    row["std_slope"] = r17(std::sqrt(var));
    row["count"] = vals.size();
    expo[std::to_string(v)] = std::move(row);
  }
  doc["exponents_localized"] = std::move(expo);
  sum.summary = std::move(doc);
  return sum;
}

int cmd_analyze(const ExperimentConfig& cfg) {
  const WeightedGraph g = cfg.resolve_graph();
  const auto entries = equilibrium_catalogue(g, cfg.support_cap);
  nlohmann::ordered_json doc;
  doc["vertices"] = g.vertex_count();
  doc["support_cap"] = cfg.support_cap;
  doc["count"] = entries.size();
  auto list = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json row;
    row["support"] = e.solve.S;
    row["h"] = r17(e.solve.h);
    row["nullspace_dim"] = e.solve.nullspace_dim;
    row["report"] = equilibrium_report_json(g, e.report);
    row["strict_representative"] =
        e.strict_representative ? equilibrium_report_json(g, *e.strict_representative)
                                : nlohmann::ordered_json(nullptr);
    list.push_back(std::move(row));
  }
  doc["equilibria"] = std::move(list);
  emit(cfg, "analyze.json", doc);
  return 0;
}

int cmd_trap(const ExperimentConfig& cfg) {
  const WeightedGraph g = cfg.resolve_graph();
  const auto traps = trap_catalogue(g);
  nlohmann::ordered_json doc;
  doc["vertices"] = g.vertex_count();
  doc["count"] = traps.size();
  auto list = nlohmann::ordered_json::array();
  for (const auto& t : traps) list.push_back(trap_report_json(g, t));
  doc["traps"] = std::move(list);
  emit(cfg, "traps.json", doc);
  return 0;
}

int cmd_ode(const ExperimentConfig& cfg) {
  const WeightedGraph g = cfg.resolve_graph();
  const Eigen::VectorXd x0 =
      Eigen::VectorXd::Constant(g.vertex_count(), 1.0 / g.vertex_count());
  const double dt = 1e-2;
  const OdeTrajectory traj =
      integrate_replicator(g, SimplexPoint(x0), dt * static_cast<double>(cfg.steps), dt);
  nlohmann::ordered_json doc;
  doc["steps"] = cfg.steps;
  doc["dt"] = r17(dt);
  doc["H_initial"] = r17(traj.H_series.front());
  doc["H_final"] = r17(traj.H_series.back());
  doc["final_state"] =
      nlohmann::ordered_json::parse(SimplexPoint(traj.states.back()).to_json());
  emit(cfg, "ode.json", doc);
  if (!cfg.out_dir.empty()) write_file(cfg.out_dir + "/trajectory.csv", trajectory_csv(g, traj));
  return 0;
}

namespace {

RunConfig simulate_base(const ExperimentConfig& cfg, const WeightedGraph& g) {
  RunConfig base;
  base.graph = g;
  base.total_steps = cfg.steps;
  base.start_vertex = 0;
  if (cfg.builtin && *cfg.builtin == "example1") {
    // occupation seeded near the strictly stable point, small boundary mass
    const double zeta = 1e-2;
    Eigen::VectorXd w(6);
    w << 3, 3, 1, 1, zeta, zeta;
    base.Z0.resize(6);
    for (int i = 0; i < 6; ++i) base.Z0[i] = 1000.0 * w[i] / w.sum();
    base.reference_q = example1_point();
    base.track_z = true;
  }
  return base;
}

}  // namespace

int cmd_simulate(const ExperimentConfig& cfg) {
  const WeightedGraph g = cfg.resolve_graph();
  const RunConfig base = simulate_base(cfg, g);
  SimulationSummary sum = run_many(base, cfg.runs, cfg.seed);
  if (!cfg.out_dir.empty()) {
    char name[32];
    for (int r = 0; r < cfg.runs; ++r) {
      std::snprintf(name, sizeof(name), "runs/run_%04d.csv", r);
      write_file(cfg.out_dir + "/" + name, snapshots_csv(g, sum.reports[r]));
    }
  }
  emit(cfg, "summary.json", sum.summary);
  return 0;
}

int cmd_zloop(const ExperimentConfig& cfg) {
  const int K = std::max(cfg.params.depth, 4);
  int localized = 0, mass_ok = 0;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  WeightedGraph g = zloop_graph(K);
  for (int r = 0; r < cfg.runs; ++r) {
    const ZloopResult res =
        scenario_zloop(K, cfg.steps, cfg.seed ^ static_cast<std::uint64_t>(r));
    if (res.stats.localized_core) {
      ++localized;
      if (res.stats.z0_over_n >= 0.9) ++mass_ok;
    }
    nlohmann::ordered_json row;
    row["seed"] = cfg.seed ^ static_cast<std::uint64_t>(r);
    row["localized_core"] = res.stats.localized_core;
    row["z0_over_n"] = r17(res.stats.z0_over_n);
    row["z_pm1_logn_over_n"] = r17(res.stats.z_pm1_logn_over_n);
    row["alpha"] = r17(res.stats.alpha);
    row["zm2_scaled"] = r17(res.stats.zm2_scaled);
    row["zp2_scaled"] = r17(res.stats.zp2_scaled);
    row["range"] = res.report.range_estimate;
    rows.push_back(std::move(row));
    if (!cfg.out_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof(name), "runs/run_%04d.csv", r);
      write_file(cfg.out_dir + "/" + name, snapshots_csv(g, res.report));
    }
  }
  nlohmann::ordered_json doc;
  doc["K"] = K;
  doc["runs"] = cfg.runs;
  doc["total_steps"] = cfg.steps;
  doc["base_seed"] = cfg.seed;
  doc["localized_core_runs"] = localized;
  doc["origin_mass_at_least_0.9"] = mass_ok;
  doc["per_run"] = std::move(rows);
  emit(cfg, "summary.json", doc);
  return 0;
}

int cmd_ladder_ex2(const ExperimentConfig& cfg) {
  const LadderParams& P = cfg.params.ladder;
  P.validate();
  const WeightedGraph g = ladder_ex2_graph(P);
  // interior = everything left of the truncation rung
  VertexSet interior;
  for (int i = 0; i < P.depth; ++i) {
    interior.push_back(ladder_under(i));
    interior.push_back(ladder_over(i));
  }
  std::sort(interior.begin(), interior.end());

  int checked = 0;
  nlohmann::ordered_json stable_list = nlohmann::ordered_json::array();
  VertexSet S;
  auto consider = [&]() {
    ++checked;
    SupportSolve solve = solve_equilibrium_on_support(g, S);
    if (!solve.feasible) return;
    bool full_support = true;
    for (int v : S) full_support = full_support && solve.point[v] > kSupportEpsilon;
    if (!full_support) return;
    const EquilibriumReport rep = classify_equilibrium(g, solve.point);
    if (rep.classification == EquilibriumClass::stable ||
        rep.classification == EquilibriumClass::strictly_stable) {
      nlohmann::ordered_json row;
      row["support"] = S;
      row["report"] = equilibrium_report_json(g, rep);
      stable_list.push_back(std::move(row));
    }
  };
  auto rec = [&](auto&& self, std::size_t from, int remaining) -> void {
    if (!S.empty()) consider();
    if (remaining == 0) return;
    for (std::size_t k = from; k < interior.size(); ++k) {
      S.push_back(interior[k]);
      self(self, k + 1, remaining - 1);
      S.pop_back();
    }
  };
  rec(rec, 0, 3);

  const auto traps = trap_catalogue(g);
  nlohmann::ordered_json doc;
  doc["note"] = "finite-depth truncation: evidence only, not a proof for the infinite ladder";
  nlohmann::ordered_json pj;
  pj["p"] = r17(P.p);
  pj["q"] = r17(P.q);
  pj["eps"] = r17(P.eps);
  pj["eta"] = r17(P.eta);
  pj["mu"] = r17(P.mu);
  pj["depth"] = P.depth;
  doc["params"] = std::move(pj);
  auto pn = nlohmann::ordered_json::array();
  auto qn = nlohmann::ordered_json::array();
  for (int k = 0; k <= P.depth; ++k) {
    pn.push_back(r17(ladder_p_n(P, k)));
    qn.push_back(r17(ladder_q_n(P, k)));
  }
  doc["p_n"] = std::move(pn);
  doc["q_n"] = std::move(qn);
  doc["interior_supports_checked"] = checked;
  doc["stable_equilibria"] = std::move(stable_list);
  auto tlist = nlohmann::ordered_json::array();
  for (const auto& t : traps) tlist.push_back(trap_report_json(g, t));
  doc["strongly_trapping_sets"] = std::move(tlist);
  emit(cfg, "ladder_evidence.json", doc);
  return 0;
}

int cmd_triangle(const ExperimentConfig& cfg) {
  const auto eq =
      solve_triangle_equilibrium(cfg.params.a, cfg.params.b, cfg.params.c);
  const WeightedGraph g = triangle_graph(cfg.params.a, cfg.params.b, cfg.params.c);
  const EquilibriumReport rep = classify_equilibrium(g, eq.point);
  nlohmann::ordered_json doc;
  doc["a"] = r17(cfg.params.a);
  doc["b"] = r17(cfg.params.b);
  doc["c"] = r17(cfg.params.c);
  doc["H"] = r17(eq.H);
  doc["report"] = equilibrium_report_json(g, rep);
  emit(cfg, "triangle.json", doc);
  return 0;
}

int run_command(const ExperimentConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (cfg.command == "analyze") return cmd_analyze(cfg);
    if (cfg.command == "trap") return cmd_trap(cfg);
    if (cfg.command == "ode") return cmd_ode(cfg);
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    if (cfg.command == "zloop") return cmd_zloop(cfg);
    if (cfg.command == "ladder_ex2") return cmd_ladder_ex2(cfg);
    if (cfg.command == "triangle") return cmd_triangle(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace vrrw
