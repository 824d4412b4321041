#include "CLI11.hpp"
#include "vrrw/cli_ops.hpp"

int main(int argc, char** argv) {
  CLI::App app{"vertex-reinforced random walks: equilibria, traps, simulation"};
  app.require_subcommand(1);

  vrrw::ExperimentConfig cfg;
  std::string graph_path, builtin;

  auto add_common = [&](CLI::App* sub, bool graph_opts, bool run_opts) {
    if (graph_opts) {
      sub->add_option("--graph", graph_path, "graph JSON file");
      sub->add_option("--scenario", builtin,
                      "builtin graph: example1|triangle|ztrunc|zloop|ladder_ex2|k2|star|cycle");
    }
    if (run_opts) {
      sub->add_option("--runs", cfg.runs, "number of independent runs");
      sub->add_option("--steps", cfg.steps, "steps per run");
      sub->add_option("--seed", cfg.seed, "base seed (run r uses seed XOR r)");
    }
    sub->add_option("--out", cfg.out_dir, "output directory (default: stdout)");
    sub->add_option_function<int>(
        "--depth",
        [&cfg](int d) {
          cfg.params.depth = d;
          cfg.params.ladder.depth = d;
        },
        "scenario size parameter");
    sub->add_option("--a", cfg.params.a, "triangle weight a(1,2)");
    sub->add_option("--b", cfg.params.b, "triangle weight a(0,2)");
    sub->add_option("--c", cfg.params.c, "triangle weight a(0,1)");
    sub->add_option("--p", cfg.params.ladder.p, "ladder base weight p");
    sub->add_option("--q", cfg.params.ladder.q, "ladder base weight q");
    sub->add_option("--eps", cfg.params.ladder.eps, "ladder decay eps");
    sub->add_option("--eta", cfg.params.ladder.eta, "ladder growth eta");
    sub->add_option("--mu", cfg.params.ladder.mu, "ladder geometric rate mu");
  };

  auto* analyze = app.add_subcommand("analyze", "find and classify equilibria");
  analyze->add_option("--support-cap", cfg.support_cap, "max support size to enumerate");
  add_common(analyze, true, false);

  auto* trap = app.add_subcommand("trap", "search for strongly trapping subsets");
  add_common(trap, true, false);

  auto* ode = app.add_subcommand("ode", "integrate the replicator flow");
  add_common(ode, true, true);

  auto* simulate = app.add_subcommand("simulate", "run reinforced walks");
  add_common(simulate, true, true);

  auto* zloop = app.add_subcommand("zloop", "walk on a path with a loop at the origin");
  add_common(zloop, false, true);

  auto* ladder = app.add_subcommand("ladder_ex2", "truncated half-ladder evidence report");
  add_common(ladder, false, false);

  auto* triangle = app.add_subcommand("triangle", "closed-form triangle equilibrium");
  add_common(triangle, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (!graph_path.empty()) cfg.graph_path = graph_path;
  if (!builtin.empty()) cfg.builtin = builtin;
  return vrrw::run_command(cfg);
}
