// Scenario execution: runs a parsed scenario and writes CSV artifacts.
// Exit codes: 0 success, 2 config error, 3 quadrature non-convergence,
// 4 I/O error.
#pragma once

#include <string>
#include <vector>

#include "fluctoforce/scenario.hpp"

namespace fluct {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitQuadrature = 3;
inline constexpr int kExitIo = 4;

// One plotted curve of a figure: a ready-to-run sweep scenario.
struct FigureCurve {
  std::string label;
  Scenario scenario;
};

// Preset curves for figures 1-4, built on the given substrate model.
std::vector<FigureCurve> figure_curves(int figure, const Material& substrate,
                                       const SolverOptions& solver);

// Runs a scenario. For pressure/sweep/equilibria, out_path is the CSV file to
// write. For reproduce-fig, out_path is a directory receiving one CSV and one
// manifest scenario per curve. Diagnostics go to stderr; returns an exit code.
int run_scenario(const Scenario& scenario, const std::string& out_path);

// Loads and runs a scenario file; expected_command (when non-empty) must
// match the file's command.
int run_scenario_file(const std::string& scenario_path, const std::string& out_path,
                      const std::string& expected_command = {},
                      const double* rel_tol_override = nullptr);

}  // namespace fluct
