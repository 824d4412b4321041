#pragma once

#include <string>

#include "vrrw/graph.hpp"
#include "vrrw/replicator.hpp"
#include "vrrw/sim.hpp"

#include "json.hpp"

namespace vrrw {

// All reals in emitted documents are decimal strings with up to 17
// significant digits (%.17g), so output is byte-deterministic and
// value-exact on round trip.
std::string r17(double x);

nlohmann::ordered_json equilibrium_report_json(const WeightedGraph& g,
                                               const EquilibriumReport& r);
nlohmann::ordered_json trap_report_json(const WeightedGraph& g, const TrapReport& r);
nlohmann::ordered_json localization_report_json(const WeightedGraph& g,
                                                const LocalizationReport& r);

// Snapshot CSV: n, one v column per vertex, then V_q and H when present.
std::string snapshots_csv(const WeightedGraph& g, const LocalizationReport& r);
// Diagnostic CSV for the corrected occupation: n, vertex, v_i, z_i, drift_i,
// residual_i (drift = F(z)/((n+n0+1)H(v)), residual = observed - drift).
std::string diagnostics_csv(const WeightedGraph& g, const LocalizationReport& r);
// Trajectory CSV for the ODE: t, one column per vertex, H, J.
std::string trajectory_csv(const WeightedGraph& g, const OdeTrajectory& t);

void write_file(const std::string& path, const std::string& content);

}  // namespace vrrw
