// Scenario files: flat key = value text with dotted section names.
// Unknown or duplicate keys are rejected. serialize_scenario emits a manifest
// that re-runs to bit-identical output (doubles are stored losslessly).
#pragma once

#include <string>
#include <vector>

#include "fluctoforce/analysis.hpp"

namespace fluct {

struct Scenario {
  std::string name;
  std::string command;  // pressure | sweep | equilibria | reproduce-fig

  // pressure / sweep / equilibria
  SystemConfig system;

  // sweep
  SweepAxis sweep_axis = SweepAxis::Separation;
  std::vector<double> sweep_values;

  // equilibria
  double a_min = 1e-9;
  double a_max = 50e-6;
  int grid_points = 200;

  // reproduce-fig
  int figure = 0;
  Material substrate;  // substrate model used by the figure presets

  SolverOptions solver;
};

Scenario parse_scenario(const std::string& text);       // throws ConfigError
Scenario load_scenario(const std::string& path);        // throws ConfigError
std::string serialize_scenario(const Scenario& s);      // manifest form

}  // namespace fluct
