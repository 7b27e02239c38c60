// Equilibrium-point location/classification and parameter sweeps.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fluctoforce/pressure.hpp"

namespace fluct {

enum class Stability { Stable, Unstable };

struct EquilibriumPoint {
  double separation = 0.0;      // m
  Stability stability = Stability::Stable;
  double pressure_slope = 0.0;  // Pa/m at the crossing
};

struct RootScanOptions {
  int grid_points = 200;             // log-spaced scan grid
  double separation_rel_tol = 1e-4;  // bisection stop: bracket width / root
};

// plate_pressure(2) / p_eq_avg. Negative means repulsion (p_eq_avg < 0).
// Throws SingularInputError when |p_eq_avg| underflows (vacuum slabs).
double normalized_pressure(const SystemConfig& config, const SolverOptions& opt = {});

// Scans the given pressure on a log grid over [a_min, a_max], brackets every
// sign change and refines each by bisection. With repulsion positive, a
// positive-to-negative crossing (increasing a) is stable. Grid evaluations
// run in parallel; results are deterministic. Returns points sorted by
// separation (empty when there is no crossing).
std::vector<EquilibriumPoint> find_equilibria(const std::function<double(double)>& pressure,
                                              double a_min, double a_max,
                                              const RootScanOptions& scan = {});

// Same, driving plate_pressure(2) of the template config with gap replaced.
std::vector<EquilibriumPoint> find_equilibria(const SystemConfig& config_template, double a_min,
                                              double a_max, const SolverOptions& opt = {},
                                              const RootScanOptions& scan = {});

enum class SweepAxis { OmegaRatio, Dilution, Porosity1, Porosity2, Separation };

const char* sweep_axis_name(SweepAxis axis);
SweepAxis sweep_axis_from_name(const std::string& name);  // throws ConfigError

// Returns the template with the axis applied:
//   OmegaRatio: slab2 layer resonance = value * slab1 layer resonance
//   Dilution:   both layers' dilution = value
//   Porosity1/2: porosity of that slab's composite layer
//   Separation: the gap
SystemConfig apply_axis(const SystemConfig& config_template, SweepAxis axis, double value);

struct SweepPoint {
  double axis_value = 0.0;
  PressureBreakdown breakdown{};
  double normalized = 0.0;  // plate2_total / p_eq_avg
  bool ok = false;
  std::string error;  // set when this point failed; breakdown fields are NaN
};

struct SweepResult {
  std::string axis_name;
  std::vector<double> axis_values;
  std::vector<SweepPoint> points;
  std::vector<double> normalized;
};

// Evaluates the full breakdown at every axis value. Points are computed
// concurrently; output order follows the input. Per-point failures are
// recorded in the row instead of aborting the sweep.
SweepResult sweep(const SystemConfig& config_template, SweepAxis axis,
                  const std::vector<double>& values, const SolverOptions& opt = {});

}  // namespace fluct
