#include "vrrw/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace vrrw {

std::string r17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

namespace {

nlohmann::ordered_json real_array(const Eigen::VectorXd& v) {
  auto arr = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(r17(v[i]));
  return arr;
}

nlohmann::ordered_json real_array(const std::vector<double>& v) {
  auto arr = nlohmann::ordered_json::array();
  for (double x : v) arr.push_back(r17(x));
  return arr;
}

nlohmann::ordered_json partition_json(const std::optional<PartitionDecomposition>& p) {
  if (!p) return nullptr;
  nlohmann::ordered_json out;
  out["parts"] = p->parts;
  out["loop_part"] = p->loop_part;
  return out;
}

}  // namespace

nlohmann::ordered_json equilibrium_report_json(const WeightedGraph& g,
                                               const EquilibriumReport& r) {
  (void)g;
  nlohmann::ordered_json doc;
  doc["point"] = nlohmann::ordered_json::parse(r.point.to_json());
  doc["H"] = r17(r.H);
  doc["N"] = real_array(r.N);
  auto slack = nlohmann::ordered_json::object();
  for (const auto& [v, s] : r.boundary_slack) slack[std::to_string(v)] = r17(s);
  doc["boundary_slack"] = std::move(slack);
  doc["B_spectrum"] = real_array(r.B_spectrum);
  doc["DF_spectrum"] = real_array(r.DF_spectrum);
  doc["classification"] = to_string(r.classification);
  doc["partition"] = partition_json(r.partition);
  doc["nullspace_dim"] = r.nullspace_dim;
  return doc;
}

nlohmann::ordered_json trap_report_json(const WeightedGraph& g, const TrapReport& r) {
  nlohmann::ordered_json doc;
  doc["S"] = r.S;
  doc["boundary"] = r.boundary;
  doc["trap"] = r.trap();
  doc["a_S"] = r.a_S ? nlohmann::ordered_json(r17(*r.a_S)) : nlohmann::ordered_json(nullptr);
  doc["partition"] = partition_json(r.partition);
  switch (r.verdict) {
    case TrapVerdict::strongly_trapping: doc["verdict"] = "strongly_trapping"; break;
    case TrapVerdict::fails_a: doc["verdict"] = "fails_a"; break;
    case TrapVerdict::fails_b: doc["verdict"] = "fails_b"; break;
    case TrapVerdict::fails_c: doc["verdict"] = "fails_c"; break;
  }
  if (!g.names().empty()) {
    auto labels = nlohmann::ordered_json::array();
    for (int v : r.S) labels.push_back(g.vertex_label(v));
    doc["S_labels"] = std::move(labels);
  }
  return doc;
}

nlohmann::ordered_json localization_report_json(const WeightedGraph& g,
                                                const LocalizationReport& r) {
  nlohmann::ordered_json doc;
  doc["total_steps"] = r.total_steps;
  doc["seed"] = r.seed;
  doc["n0"] = r17(r.n0);
  doc["window"] = r.window;
  doc["range_estimate"] = r.range_estimate;
  doc["range_prev"] = r.range_prev;
  doc["localized"] = r.localized;
  doc["final_v"] = real_array(r.final_v);
  doc["final_Z"] = real_array(r.final_Z);
  auto fits = nlohmann::ordered_json::object();
  for (const auto& [v, fit] : r.exponent_fits) {
    nlohmann::ordered_json f;
    f["slope"] = r17(fit.slope);
    f["stderr"] = r17(fit.stderr_);
    fits[std::to_string(v)] = std::move(f);
  }
  doc["exponent_fits"] = std::move(fits);
  auto entropy = nlohmann::ordered_json::array();
  for (const auto& [n, V] : r.entropy_series)
    entropy.push_back(nlohmann::ordered_json::array({n, r17(V)}));
  doc["entropy_series"] = std::move(entropy);
  auto hs = nlohmann::ordered_json::array();
  for (const auto& [n, H] : r.H_series)
    hs.push_back(nlohmann::ordered_json::array({n, r17(H)}));
  doc["H_series"] = std::move(hs);
  if (!g.names().empty()) doc["names"] = g.names();
  return doc;
}

std::string snapshots_csv(const WeightedGraph& g, const LocalizationReport& r) {
  std::string out = "n";
  const bool with_vq = !r.entropy_series.empty();
  for (int i = 0; i < g.vertex_count(); ++i) out += ",v_" + g.vertex_label(i);
  if (with_vq) out += ",V_q";
  out += ",H\n";
  for (const auto& snap : r.snapshots) {
    out += std::to_string(snap.n);
    for (Eigen::Index i = 0; i < snap.v.size(); ++i) out += "," + r17(snap.v[i]);
    if (with_vq) out += "," + (snap.V_q ? r17(*snap.V_q) : std::string("nan"));
    out += "," + r17(snap.H) + "\n";
  }
  return out;
}

std::string diagnostics_csv(const WeightedGraph& g, const LocalizationReport& r) {
  std::string out = "n,vertex,v_i,z_i,drift_i,residual_i\n";
  for (std::size_t k = 0; k + 1 < r.snapshots.size(); ++k) {
    const auto& a = r.snapshots[k];
    const auto& b = r.snapshots[k + 1];
    if (!a.z || !b.z) continue;
    const double H = a.H;
    const Eigen::VectorXd F = F_vec(g, *a.z);
    const double steps = static_cast<double>(b.n - a.n);
    for (int i = 0; i < g.vertex_count(); ++i) {
      const double drift = F[i] / ((static_cast<double>(a.n) + r.n0 + 1.0) * H);
      const double observed = ((*b.z)[i] - (*a.z)[i]) / steps;
      out += std::to_string(a.n) + "," + std::to_string(i) + "," + r17(a.v[i]) + "," +
             r17((*a.z)[i]) + "," + r17(drift) + "," + r17(observed - drift) + "\n";
    }
  }
  return out;
}

std::string trajectory_csv(const WeightedGraph& g, const OdeTrajectory& t) {
  std::string out = "t";
  for (int i = 0; i < g.vertex_count(); ++i) out += ",x_" + g.vertex_label(i);
  out += ",H,J\n";
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    out += r17(t.times[k]);
    for (Eigen::Index i = 0; i < t.states[k].size(); ++i) out += "," + r17(t.states[k][i]);
    out += "," + r17(t.H_series[k]) + "," + r17(t.J_series[k]) + "\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace vrrw
