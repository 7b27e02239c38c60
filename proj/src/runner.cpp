#include "fluctoforce/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "fluctoforce/csv.hpp"

namespace fluct {

namespace {

OscillatorModel fig_layer_model(double low_strength, double core_strength, double low_omega,
                                double dilution) {
  OscillatorModel o;
  o.low_strength = low_strength;
  o.low_omega = low_omega;
  o.low_damping = 1e11;
  o.core_strength = core_strength;
  o.core_omega = 1e16;
  o.core_damping = 5e14;
  o.dilution = dilution;
  return o;
}

LayeredSlab fig_slab(const Material& layer, const Material& substrate) {
  LayeredSlab s;
  s.layer = layer;
  s.thickness = 5e-6;
  s.substrate = substrate;
  s.outer_face_blackened = true;
  return s;
}

std::vector<double> linear_values(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.front() = lo;
  v.back() = hi;
  return v;
}

std::vector<double> log_values(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo * std::exp(std::log(hi / lo) * i / (n - 1));
  v.front() = lo;
  v.back() = hi;
  return v;
}

std::string format_compact(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::vector<FigureCurve> figure_curves(int figure, const Material& substrate,
                                       const SolverOptions& solver) {
  std::vector<FigureCurve> curves;

  auto base_scenario = [&](const std::string& label) {
    Scenario s;
    s.name = "fig" + std::to_string(figure) + "_" + label;
    s.command = "sweep";
    s.solver = solver;
    s.system.T1 = 300.0;
    s.system.T_env = 300.0;
    return s;
  };

  switch (figure) {
    case 1: {
      // normalized pressure vs resonance ratio at a = 300 nm
      for (double dilution : {1.0, 10.0, 20.0}) {
        for (double T2 : {600.0, 150.0}) {
          Scenario s = base_scenario("tau" + format_compact(dilution) + "_T2_" +
                                     format_compact(T2));
          s.system.slab1 = fig_slab(Material::lorentz_drude(fig_layer_model(3.0, 1.0, 1e13, dilution)),
                                    substrate);
          s.system.slab2 = fig_slab(
              Material::lorentz_drude(fig_layer_model(1.5, 0.5, 1e13, dilution)), substrate);
          s.system.gap = 300e-9;
          s.system.T2 = T2;
          s.sweep_axis = SweepAxis::OmegaRatio;
          s.sweep_values = linear_values(0.70, 1.40, 36);
          curves.push_back({s.name, s});
        }
      }
      break;
    }
    case 2: {
      // normalized pressure vs separation; ratio tuned per dilution
      const struct {
        double dilution, ratio;
      } presets[] = {{1.0, 1.1}, {10.0, 1.05}, {20.0, 1.03}};
      for (const auto& p : presets) {
        Scenario s = base_scenario("tau" + format_compact(p.dilution));
        s.system.slab1 = fig_slab(
            Material::lorentz_drude(fig_layer_model(3.0, 1.0, 1e13, p.dilution)), substrate);
        s.system.slab2 = fig_slab(
            Material::lorentz_drude(fig_layer_model(1.5, 0.5, p.ratio * 1e13, p.dilution)),
            substrate);
        s.system.gap = 300e-9;
        s.system.T2 = 600.0;
        s.sweep_axis = SweepAxis::Separation;
        s.sweep_values = log_values(5e-9, 20e-6, 49);
        curves.push_back({s.name, s});
      }
      break;
    }
    case 3:
    case 4: {
      // aerogel layers: porosity sweep (fig 3) or separation sweep (fig 4)
      const OscillatorModel host1 = fig_layer_model(1.0, 0.5, 1e13, 1.0);
      const OscillatorModel host2 = fig_layer_model(3.0, 0.5, 0.84e13, 1.0);
      for (double phi2 : {0.95, 0.9, 0.8}) {
        Scenario s = base_scenario("phi2_" + format_compact(phi2));
        const double phi1 = figure == 3 ? 0.77 : 0.95;  // fig 3 sweeps phi1 anyway
        s.system.slab1 = fig_slab(Material::maxwell_garnett(host1, phi1), substrate);
        s.system.slab2 = fig_slab(Material::maxwell_garnett(host2, phi2), substrate);
        s.system.gap = 200e-9;
        s.system.T2 = 600.0;
        if (figure == 3) {
          s.sweep_axis = SweepAxis::Porosity1;
          s.sweep_values = linear_values(0.60, 0.99, 40);
        } else {
          s.sweep_axis = SweepAxis::Separation;
          s.sweep_values = log_values(50e-9, 10e-6, 45);
        }
        curves.push_back({s.name, s});
      }
      break;
    }
    default:
      throw ConfigError("figure_curves: figure must be 1..4");
  }
  return curves;
}

namespace {

int write_file(const std::string& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    std::fprintf(stderr, "fluctoforce: cannot open output file %s\n", path.c_str());
    return kExitIo;
  }
  os << contents;
  os.flush();
  if (!os.good()) {
    std::fprintf(stderr, "fluctoforce: write failed for %s\n", path.c_str());
    return kExitIo;
  }
  return kExitOk;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream os;
  csv::write_breakdown_csv(os, result);
  return os.str();
}

void report_failed_points(const SweepResult& result) {
  for (const SweepPoint& pt : result.points) {
    if (!pt.ok) {
      std::fprintf(stderr, "fluctoforce: sweep point %g failed: %s\n", pt.axis_value,
                   pt.error.c_str());
    }
  }
}

int run_single_pressure(const Scenario& s, const std::string& out_path) {
  SweepResult result;
  result.axis_name = sweep_axis_name(SweepAxis::Separation);
  result.axis_values = {s.system.gap};
  SweepPoint pt;
  pt.axis_value = s.system.gap;
  pt.breakdown = total_inside_pressure(s.system, s.solver);
  pt.normalized = std::abs(pt.breakdown.p_eq_avg) > 0.0
                      ? pt.breakdown.plate2_total / pt.breakdown.p_eq_avg
                      : std::numeric_limits<double>::quiet_NaN();
  pt.ok = true;
  result.points.push_back(pt);
  result.normalized.push_back(pt.normalized);
  return write_file(out_path, sweep_to_csv(result));
}

int run_sweep(const Scenario& s, const std::string& out_path) {
  const SweepResult result = sweep(s.system, s.sweep_axis, s.sweep_values, s.solver);
  report_failed_points(result);
  return write_file(out_path, sweep_to_csv(result));
}

int run_equilibria(const Scenario& s, const std::string& out_path) {
  RootScanOptions scan;
  scan.grid_points = s.grid_points;
  const std::vector<EquilibriumPoint> points =
      find_equilibria(s.system, s.a_min, s.a_max, s.solver, scan);
  std::vector<double> residuals;
  residuals.reserve(points.size());
  for (const EquilibriumPoint& pt : points) {
    SystemConfig cfg = s.system;
    cfg.gap = pt.separation;
    residuals.push_back(plate_pressure(2, cfg, s.solver));
  }
  std::ostringstream os;
  csv::write_equilibria_csv(os, points, residuals);
  return write_file(out_path, os.str());
}

int run_figure(const Scenario& s, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "fluctoforce: cannot create output directory %s\n", out_dir.c_str());
    return kExitIo;
  }
  for (const FigureCurve& curve : figure_curves(s.figure, s.substrate, s.solver)) {
    const SweepResult result =
        sweep(curve.scenario.system, curve.scenario.sweep_axis, curve.scenario.sweep_values,
              curve.scenario.solver);
    report_failed_points(result);
    const std::string base = out_dir + "/" + curve.label;
    if (int rc = write_file(base + ".csv", sweep_to_csv(result)); rc != kExitOk) return rc;
    if (int rc = write_file(base + ".scenario", serialize_scenario(curve.scenario));
        rc != kExitOk) {
      return rc;
    }
  }
  return kExitOk;
}

}  // namespace

int run_scenario(const Scenario& scenario, const std::string& out_path) {
  try {
    if (scenario.command == "pressure") return run_single_pressure(scenario, out_path);
    if (scenario.command == "sweep") return run_sweep(scenario, out_path);
    if (scenario.command == "equilibria") return run_equilibria(scenario, out_path);
    if (scenario.command == "reproduce-fig") return run_figure(scenario, out_path);
    std::fprintf(stderr, "fluctoforce: unknown command %s\n", scenario.command.c_str());
    return kExitConfig;
  } catch (const QuadratureError& e) {
    std::fprintf(stderr, "fluctoforce: quadrature failed to converge: %s (best %.6e +- %.1e)\n",
                 e.what(), e.best_estimate, e.error_bound);
    return kExitQuadrature;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "fluctoforce: %s\n", e.what());
    return kExitConfig;
  } catch (const UnsupportedConfigError& e) {
    std::fprintf(stderr, "fluctoforce: %s\n", e.what());
    return kExitConfig;
  } catch (const SingularInputError& e) {
    std::fprintf(stderr, "fluctoforce: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "fluctoforce: %s\n", e.what());
    return kExitConfig;
  }
}

int run_scenario_file(const std::string& scenario_path, const std::string& out_path,
                      const std::string& expected_command, const double* rel_tol_override) {
  Scenario scenario;
  try {
    scenario = load_scenario(scenario_path);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "fluctoforce: %s\n", e.what());
    return kExitConfig;
  }
  if (!expected_command.empty() && scenario.command != expected_command) {
    std::fprintf(stderr, "fluctoforce: scenario command '%s' does not match subcommand '%s'\n",
                 scenario.command.c_str(), expected_command.c_str());
    return kExitConfig;
  }
  if (rel_tol_override) {
    if (!(*rel_tol_override > 0.0)) {
      std::fprintf(stderr, "fluctoforce: --rel-tol must be positive\n");
      return kExitConfig;
    }
    scenario.solver.rel_tol = *rel_tol_override;
  }
  return run_scenario(scenario, out_path);
}

}  // namespace fluct
