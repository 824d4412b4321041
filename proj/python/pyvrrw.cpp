// Python bindings for the vertex-reinforced random walk library: graph
// construction and structure checks, replicator-flow analytics, the frozen
// Markov-chain layer, seeded simulation, and the built-in scenario graphs.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vrrw/chain.hpp"
#include "vrrw/cli_ops.hpp"
#include "vrrw/graph.hpp"
#include "vrrw/replicator.hpp"
#include "vrrw/scenarios.hpp"
#include "vrrw/sim.hpp"

namespace py = pybind11;
using namespace vrrw;

PYBIND11_MODULE(pyvrrw, m) {
  m.doc() = "vertex-reinforced random walks: equilibria, traps, simulation";

  // ---- graphs ----------------------------------------------------------
  py::class_<WeightedGraph>(m, "WeightedGraph")
      .def(py::init<int>(), py::arg("vertex_count"))
      .def("vertex_count", &WeightedGraph::vertex_count)
      .def(
          "add_edge",
          [](WeightedGraph& g, int u, int v, double w,
             const std::optional<std::string>& exact) {
            std::optional<Rational> q;
            if (exact) {
              q = parse_rational(*exact);
              if (!q) throw std::invalid_argument("bad rational literal: " + *exact);
              w = q->value();
            }
            g.add_edge(u, v, w, q, exact);
          },
          py::arg("u"), py::arg("v"), py::arg("weight"),
          py::arg("exact") = std::nullopt,
          "Add an undirected edge (loops allowed); pass exact='3/8' to make "
          "the weight an exact rational that round-trips through files.")
      .def("adjacent", &WeightedGraph::adjacent)
      .def("weight", &WeightedGraph::weight)
      .def("has_loop", &WeightedGraph::has_loop)
      .def("degree", &WeightedGraph::degree)
      .def("neighbors", &WeightedGraph::neighbors,
           "Neighbors of i as (vertex, weight) pairs, ascending.")
      .def("adjacency", &WeightedGraph::adjacency)
      .def("names", &WeightedGraph::names)
      .def("set_names", &WeightedGraph::set_names)
      .def("vertex_label", &WeightedGraph::vertex_label);

  m.def("validate", [](const WeightedGraph& g) { validate(g); },
        "Raises ValueError unless the graph is well formed and connected.");
  m.def("graph_to_json", &graph_to_json);
  m.def("graph_from_json", &graph_from_json);
  m.def("save_graph", &save_graph);
  m.def("load_graph", &load_graph);
  m.def("outer_boundary", &outer_boundary);

  py::class_<PartitionDecomposition>(m, "PartitionDecomposition")
      .def_readonly("parts", &PartitionDecomposition::parts)
      .def_readonly("loop_part", &PartitionDecomposition::loop_part);
  py::class_<DecomposeFailure>(m, "DecomposeFailure")
      .def_readonly("reason", &DecomposeFailure::reason)
      .def_readonly("witness", &DecomposeFailure::witness);
  py::class_<DecomposeResult>(m, "DecomposeResult")
      .def_readonly("partition", &DecomposeResult::partition)
      .def_readonly("failure", &DecomposeResult::failure)
      .def("ok", &DecomposeResult::ok);
  m.def("multipartite_decompose", &multipartite_decompose);
  m.def("check_P", &check_P);
  m.def("check_P_prime", &check_P_prime);

  py::enum_<TrapVerdict>(m, "TrapVerdict")
      .value("strongly_trapping", TrapVerdict::strongly_trapping)
      .value("fails_a", TrapVerdict::fails_a)
      .value("fails_b", TrapVerdict::fails_b)
      .value("fails_c", TrapVerdict::fails_c);
  py::class_<TrapReport>(m, "TrapReport")
      .def_readonly("S", &TrapReport::S)
      .def_readonly("boundary", &TrapReport::boundary)
      .def_readonly("a_S", &TrapReport::a_S)
      .def_readonly("partition", &TrapReport::partition)
      .def_readonly("verdict", &TrapReport::verdict)
      .def("trap", &TrapReport::trap);
  m.def("is_strongly_trapping", &is_strongly_trapping);
  m.def("find_trapping_volkov", &find_trapping_volkov);
  m.def("check_bipartite_criterion", &check_bipartite_criterion);

  // ---- simplex points ----------------------------------------------------
  py::class_<SimplexPoint>(m, "SimplexPoint")
      .def(py::init<const std::vector<double>&>(), py::arg("values"),
           "Exact probability vector (must sum to 1 within 1e-12).")
      .def_static("normalized", [](Eigen::VectorXd v) {
        return SimplexPoint::normalized(std::move(v));
      })
      .def("__len__", &SimplexPoint::size)
      .def("__getitem__",
           [](const SimplexPoint& x, int i) {
             if (i < 0 || i >= x.size()) throw py::index_error();
             return x[i];
           })
      .def("values", &SimplexPoint::values)
      .def("support", &SimplexPoint::support)
      .def("to_json", &SimplexPoint::to_json)
      .def_static("from_json", &SimplexPoint::from_json);

  // ---- replicator analytics ----------------------------------------------
  m.def("N_vec", &N_vec);
  m.def("H_val", &H_val);
  m.def("F_vec", &F_vec);
  m.def("J_val", &J_val);
  m.def("pi_measure", &pi_measure);

  py::enum_<EquilibriumClass>(m, "EquilibriumClass")
      .value("not_equilibrium", EquilibriumClass::not_equilibrium)
      .value("unstable", EquilibriumClass::unstable)
      .value("stable", EquilibriumClass::stable)
      .value("strictly_stable", EquilibriumClass::strictly_stable);
  py::class_<EquilibriumReport>(m, "EquilibriumReport")
      .def_readonly("point", &EquilibriumReport::point)
      .def_readonly("H", &EquilibriumReport::H)
      .def_readonly("N", &EquilibriumReport::N)
      .def_readonly("boundary_slack", &EquilibriumReport::boundary_slack)
      .def_readonly("B_spectrum", &EquilibriumReport::B_spectrum)
      .def_readonly("DF_spectrum", &EquilibriumReport::DF_spectrum)
      .def_readonly("classification", &EquilibriumReport::classification)
      .def_readonly("partition", &EquilibriumReport::partition)
      .def_readonly("nullspace_dim", &EquilibriumReport::nullspace_dim);
  m.def("classify_equilibrium", &classify_equilibrium, py::arg("graph"),
        py::arg("x"), py::arg("tol") = 1e-8);

  py::class_<TriangleEquilibrium>(m, "TriangleEquilibrium")
      .def_readonly("point", &TriangleEquilibrium::point)
      .def_readonly("H", &TriangleEquilibrium::H);
  m.def("solve_triangle_equilibrium", &solve_triangle_equilibrium);

  py::class_<SupportSolve>(m, "SupportSolve")
      .def_readonly("point", &SupportSolve::point)
      .def_readonly("h", &SupportSolve::h)
      .def_readonly("nullspace_dim", &SupportSolve::nullspace_dim)
      .def_readonly("consistent", &SupportSolve::consistent)
      .def_readonly("feasible", &SupportSolve::feasible)
      .def_readonly("nullspace", &SupportSolve::nullspace)
      .def_readonly("S", &SupportSolve::S);
  m.def("solve_equilibrium_on_support", &solve_equilibrium_on_support);

  py::class_<OdeTrajectory>(m, "OdeTrajectory")
      .def_readonly("times", &OdeTrajectory::times)
      .def_readonly("states", &OdeTrajectory::states)
      .def_readonly("H_series", &OdeTrajectory::H_series)
      .def_readonly("J_series", &OdeTrajectory::J_series);
  m.def("integrate_replicator", &integrate_replicator, py::arg("graph"),
        py::arg("x0"), py::arg("t_end"), py::arg("dt") = 1e-2);

  m.def("entropy_V", &entropy_V);
  m.def("I_q", &I_q);
  m.def("theorem2_check", &theorem2_check, py::arg("graph"), py::arg("x"),
        py::arg("tol") = 1e-8);

  // ---- frozen-occupation chain ---------------------------------------------
  py::class_<ChainOperators>(m, "ChainOperators")
      .def_readonly("M", &ChainOperators::M)
      .def_readonly("pi", &ChainOperators::pi)
      .def_readonly("Q", &ChainOperators::Q);
  m.def("build_chain", &build_chain);
  m.def("spectral_gap", &spectral_gap);
  m.def("z_corrector", &z_corrector);
  m.def("drift_residual", &drift_residual);

  // ---- simulation -----------------------------------------------------------
  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("graph", &RunConfig::graph)
      .def_readwrite("Z0", &RunConfig::Z0)
      .def_readwrite("start_vertex", &RunConfig::start_vertex)
      .def_readwrite("total_steps", &RunConfig::total_steps)
      .def_readwrite("snapshot_schedule", &RunConfig::snapshot_schedule)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("reference_q", &RunConfig::reference_q)
      .def_readwrite("track_z", &RunConfig::track_z);
  py::class_<Snapshot>(m, "Snapshot")
      .def_readonly("n", &Snapshot::n)
      .def_readonly("v", &Snapshot::v)
      .def_readonly("H", &Snapshot::H)
      .def_readonly("z", &Snapshot::z)
      .def_readonly("V_q", &Snapshot::V_q)
      .def_readonly("I_q_val", &Snapshot::I_q_val);
  py::class_<FitResult>(m, "FitResult")
      .def_readonly("slope", &FitResult::slope)
      .def_readonly("stderr", &FitResult::stderr_);
  py::class_<LocalizationReport>(m, "LocalizationReport")
      .def_readonly("range_estimate", &LocalizationReport::range_estimate)
      .def_readonly("range_prev", &LocalizationReport::range_prev)
      .def_readonly("localized", &LocalizationReport::localized)
      .def_readonly("final_v", &LocalizationReport::final_v)
      .def_readonly("final_Z", &LocalizationReport::final_Z)
      .def_readonly("exponent_fits", &LocalizationReport::exponent_fits)
      .def_readonly("entropy_series", &LocalizationReport::entropy_series)
      .def_readonly("H_series", &LocalizationReport::H_series)
      .def_readonly("snapshots", &LocalizationReport::snapshots)
      .def_readonly("total_steps", &LocalizationReport::total_steps)
      .def_readonly("window", &LocalizationReport::window)
      .def_readonly("n0", &LocalizationReport::n0)
      .def_readonly("seed", &LocalizationReport::seed);
  m.def("run", &run, py::call_guard<py::gil_scoped_release>());
  m.def("default_schedule", &default_schedule);
  m.def("theoretical_exponent", &theoretical_exponent);

  py::class_<DriftRow>(m, "DriftRow")
      .def_readonly("n_begin", &DriftRow::n_begin)
      .def_readonly("n_end", &DriftRow::n_end)
      .def_readonly("measured", &DriftRow::measured)
      .def_readonly("predicted", &DriftRow::predicted);
  m.def("entropy_drift_check", &entropy_drift_check);

  py::class_<ZloopStats>(m, "ZloopStats")
      .def_readonly("z0_over_n", &ZloopStats::z0_over_n)
      .def_readonly("z_pm1_logn_over_n", &ZloopStats::z_pm1_logn_over_n)
      .def_readonly("alpha", &ZloopStats::alpha)
      .def_readonly("zm2_scaled", &ZloopStats::zm2_scaled)
      .def_readonly("zp2_scaled", &ZloopStats::zp2_scaled)
      .def_readonly("localized_core", &ZloopStats::localized_core);
  py::class_<ZloopResult>(m, "ZloopResult")
      .def_readonly("report", &ZloopResult::report)
      .def_readonly("stats", &ZloopResult::stats);
  m.def("scenario_zloop", &scenario_zloop,
        py::call_guard<py::gil_scoped_release>());

  // ---- scenario graphs -------------------------------------------------------
  m.def("example1_graph", &example1_graph);
  m.def("example1_point", &example1_point);
  m.def("triangle_graph", &triangle_graph);
  m.def("ztrunc_graph", &ztrunc_graph);
  m.def("zloop_graph", &zloop_graph);
  m.def("complete_graph", &complete_graph);
  m.def("star_graph", &star_graph);
  m.def("cycle_graph", &cycle_graph);

  py::class_<LadderParams>(m, "LadderParams")
      .def(py::init<>())
      .def_readwrite("p", &LadderParams::p)
      .def_readwrite("q", &LadderParams::q)
      .def_readwrite("eps", &LadderParams::eps)
      .def_readwrite("eta", &LadderParams::eta)
      .def_readwrite("mu", &LadderParams::mu)
      .def_readwrite("depth", &LadderParams::depth)
      .def("validate", &LadderParams::validate);
  m.def("ladder_p_n", &ladder_p_n);
  m.def("ladder_q_n", &ladder_q_n);
  m.def("ladder_ex2_graph", &ladder_ex2_graph);
  m.def("ladder_under", &ladder_under);
  m.def("ladder_over", &ladder_over);

  // ---- catalogue / fan-out ops -------------------------------------------------
  py::class_<CatalogueEntry>(m, "CatalogueEntry")
      .def_readonly("solve", &CatalogueEntry::solve)
      .def_readonly("report", &CatalogueEntry::report)
      .def_readonly("strict_representative", &CatalogueEntry::strict_representative);
  m.def("equilibrium_catalogue", &equilibrium_catalogue, py::arg("graph"),
        py::arg("support_cap") = 6);
  m.def("trap_catalogue", &trap_catalogue);

  py::class_<SimulationSummary>(m, "SimulationSummary")
      .def_readonly("reports", &SimulationSummary::reports)
      .def("summary_json",
           [](const SimulationSummary& s) { return s.summary.dump(2); });
  m.def("run_many", &run_many, py::arg("base"), py::arg("runs"),
        py::arg("base_seed"), py::call_guard<py::gil_scoped_release>());
}
