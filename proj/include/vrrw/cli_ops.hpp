#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vrrw/graph.hpp"
#include "vrrw/replicator.hpp"
#include "vrrw/report_io.hpp"
#include "vrrw/scenarios.hpp"
#include "vrrw/sim.hpp"

namespace vrrw {

struct ExperimentConfig {
  std::string command;                    // analyze|trap|ode|simulate|zloop|ladder_ex2|triangle
  std::optional<std::string> graph_path;  // --graph
  std::optional<std::string> builtin;     // --scenario
  int runs = 1;
  long long steps = 1000000;
  std::uint64_t seed = 1;
  std::string out_dir;                    // empty -> stdout only
  ScenarioParams params;
  int support_cap = 6;

  // Throws std::invalid_argument on contradictory or missing settings.
  void validate() const;
  WeightedGraph resolve_graph() const;
};

struct CatalogueEntry {
  SupportSolve solve;
  EquilibriumReport report;
  std::optional<EquilibriumReport> strict_representative;  // degenerate manifolds
};

// Enumerates supports up to `support_cap` vertices, solves each support
// system, keeps solutions that genuinely live on their support, classifies
// them, and sorts by H (then by support).  For degenerate stable manifolds a
// seeded search over the nullspace looks for a strictly stable representative.
std::vector<CatalogueEntry> equilibrium_catalogue(const WeightedGraph& g, int support_cap);

// Volkov growth from every non-loop edge, deduplicated by S, verified.
std::vector<TrapReport> trap_catalogue(const WeightedGraph& g);

struct SimulationSummary {
  nlohmann::ordered_json summary;
  std::vector<LocalizationReport> reports;
};
// Seeded fan-out: run r uses seed = base_seed XOR r.  Aggregates localization
// frequency, range histogram and exponent statistics.
SimulationSummary run_many(const RunConfig& base, int runs, std::uint64_t base_seed);

int cmd_analyze(const ExperimentConfig& cfg);
int cmd_trap(const ExperimentConfig& cfg);
int cmd_ode(const ExperimentConfig& cfg);
int cmd_simulate(const ExperimentConfig& cfg);
int cmd_zloop(const ExperimentConfig& cfg);
int cmd_ladder_ex2(const ExperimentConfig& cfg);
int cmd_triangle(const ExperimentConfig& cfg);

// Dispatch; returns a process exit code (0 ok, 2 config error).
int run_command(const ExperimentConfig& cfg);

}  // namespace vrrw
