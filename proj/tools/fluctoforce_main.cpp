// fluctoforce CLI: pressure/sweep/equilibria runs and figure reproduction
// from scenario files. See scenarios/ for examples.
#include <CLI11.hpp>

#include "fluctoforce/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Non-equilibrium Casimir pressure between layered dielectric slabs"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  double rel_tol = 0.0;
  bool has_rel_tol = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path, "scenario file")->required();
    cmd->add_option("--out", out_path, "output CSV file (reproduce-fig: output directory)")
        ->required();
    cmd->add_option("--rel-tol", rel_tol, "override quadrature relative tolerance")
        ->each([&](const std::string&) { has_rel_tol = true; });
  };

  add_common(app.add_subcommand("pressure", "single pressure breakdown at the configured gap"));
  add_common(app.add_subcommand("sweep", "pressure breakdown along a parameter axis"));
  add_common(app.add_subcommand("equilibria", "locate and classify zero-pressure separations"));
  add_common(app.add_subcommand("reproduce-fig", "emit the preset curves of one figure"));

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  return fluct::run_scenario_file(scenario_path, out_path, command,
                                  has_rel_tol ? &rel_tol : nullptr);
}
