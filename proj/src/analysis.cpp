#include "fluctoforce/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fluctoforce/parallel.hpp"

namespace fluct {

namespace {

constexpr double kNormalizationFloor = 1e-280;

Material with_low_omega(const Material& m, double low_omega) {
  OscillatorModel o = m.oscillator();
  o.low_omega = low_omega;
  return m.kind() == MaterialKind::MaxwellGarnett ? Material::maxwell_garnett(o, m.porosity())
                                                  : Material::lorentz_drude(o);
}

Material with_dilution(const Material& m, double dilution) {
  OscillatorModel o = m.oscillator();
  o.dilution = dilution;
  return m.kind() == MaterialKind::MaxwellGarnett ? Material::maxwell_garnett(o, m.porosity())
                                                  : Material::lorentz_drude(o);
}

}  // namespace

double normalized_pressure(const SystemConfig& config, const SolverOptions& opt) {
  const PressureBreakdown b = total_inside_pressure(config, opt);
  if (!(std::abs(b.p_eq_avg) > kNormalizationFloor)) {
    throw SingularInputError("normalized_pressure: |p_eq_avg| underflows (vacuum-like slabs)");
  }
  return plate_pressure(2, config, b) / b.p_eq_avg;
}

std::vector<EquilibriumPoint> find_equilibria(const std::function<double(double)>& pressure,
                                              double a_min, double a_max,
                                              const RootScanOptions& scan) {
  if (!(a_min > 0.0) || !(a_min < a_max)) {
    throw std::invalid_argument("find_equilibria: requires 0 < a_min < a_max");
  }
  const int n = std::max(scan.grid_points, 2);
  std::vector<double> grid(n), value(n);
  const double step = std::log(a_max / a_min) / (n - 1);
  for (int i = 0; i < n; ++i) grid[i] = a_min * std::exp(step * i);
  grid.front() = a_min;
  grid.back() = a_max;

  parallel_for(static_cast<std::size_t>(n),
               [&](std::size_t i) { value[i] = pressure(grid[i]); });

  std::vector<EquilibriumPoint> out;
  for (int i = 0; i + 1 < n; ++i) {
    double lo = grid[i], hi = grid[i + 1];
    double flo = value[i], fhi = value[i + 1];
    if (!std::isfinite(flo) || !std::isfinite(fhi)) continue;
    if (flo == 0.0) {  // exact grid-node root: classify from the neighbour
      out.push_back({lo, fhi < 0.0 ? Stability::Stable : Stability::Unstable,
                     (fhi - flo) / (hi - lo)});
      continue;
    }
    if (flo * fhi >= 0.0) continue;

    while (hi > lo * (1.0 + scan.separation_rel_tol)) {
      const double mid = std::sqrt(lo * hi);
      const double fmid = pressure(mid);
      if (fmid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((flo > 0.0) == (fmid > 0.0)) {
        lo = mid;
        flo = fmid;
      } else {
        hi = mid;
        fhi = fmid;
      }
    }
    EquilibriumPoint pt;
    pt.separation = std::sqrt(lo * hi);
    pt.stability = flo > 0.0 ? Stability::Stable : Stability::Unstable;
    pt.pressure_slope = hi > lo ? (fhi - flo) / (hi - lo) : 0.0;
    out.push_back(pt);
  }
  return out;
}

std::vector<EquilibriumPoint> find_equilibria(const SystemConfig& config_template, double a_min,
                                              double a_max, const SolverOptions& opt,
                                              const RootScanOptions& scan) {
  auto pressure = [&config_template, &opt](double a) {
    SystemConfig cfg = config_template;
    cfg.gap = a;
    return plate_pressure(2, cfg, opt);
  };
  return find_equilibria(pressure, a_min, a_max, scan);
}

const char* sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::OmegaRatio: return "omega_ratio";
    case SweepAxis::Dilution: return "dilution";
    case SweepAxis::Porosity1: return "porosity_1";
    case SweepAxis::Porosity2: return "porosity_2";
    case SweepAxis::Separation: return "separation";
  }
  return "?";
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "omega_ratio") return SweepAxis::OmegaRatio;
  if (name == "dilution") return SweepAxis::Dilution;
  if (name == "porosity_1") return SweepAxis::Porosity1;
  if (name == "porosity_2") return SweepAxis::Porosity2;
  if (name == "separation") return SweepAxis::Separation;
  throw ConfigError("unknown sweep axis: " + name);
}

SystemConfig apply_axis(const SystemConfig& config_template, SweepAxis axis, double value) {
  SystemConfig cfg = config_template;
  switch (axis) {
    case SweepAxis::OmegaRatio: {
      if (cfg.slab1.layer.is_vacuum() || cfg.slab2.layer.is_vacuum()) {
        throw ConfigError("omega_ratio sweep requires oscillator layers on both slabs");
      }
      const double base = cfg.slab1.layer.oscillator().low_omega;
      cfg.slab2.layer = with_low_omega(cfg.slab2.layer, value * base);
      break;
    }
    case SweepAxis::Dilution:
      if (cfg.slab1.layer.is_vacuum() || cfg.slab2.layer.is_vacuum()) {
        throw ConfigError("dilution sweep requires oscillator layers on both slabs");
      }
      cfg.slab1.layer = with_dilution(cfg.slab1.layer, value);
      cfg.slab2.layer = with_dilution(cfg.slab2.layer, value);
      break;
    case SweepAxis::Porosity1:
    case SweepAxis::Porosity2: {
      LayeredSlab& slab = axis == SweepAxis::Porosity1 ? cfg.slab1 : cfg.slab2;
      if (slab.layer.kind() != MaterialKind::MaxwellGarnett) {
        throw ConfigError("porosity sweep requires a composite layer on the swept slab");
      }
      slab.layer = Material::maxwell_garnett(slab.layer.oscillator(), value);
      break;
    }
    case SweepAxis::Separation:
      cfg.gap = value;
      break;
  }
  return cfg;
}

SweepResult sweep(const SystemConfig& config_template, SweepAxis axis,
                  const std::vector<double>& values, const SolverOptions& opt) {
  if (values.size() >= 2) {
    const bool increasing = values[1] > values[0];
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      const bool step_up = values[i + 1] > values[i];
      if (values[i + 1] == values[i] || step_up != increasing) {
        throw std::invalid_argument("sweep: axis values must be strictly monotone");
      }
    }
  }

  SweepResult out;
  out.axis_name = sweep_axis_name(axis);
  out.axis_values = values;
  out.points.resize(values.size());
  out.normalized.assign(values.size(), std::numeric_limits<double>::quiet_NaN());

  parallel_for(values.size(), [&](std::size_t i) {
    SweepPoint& pt = out.points[i];
    pt.axis_value = values[i];
    try {
      const SystemConfig cfg = apply_axis(config_template, axis, values[i]);
      pt.breakdown = total_inside_pressure(cfg, opt);
      pt.normalized = std::abs(pt.breakdown.p_eq_avg) > kNormalizationFloor
                          ? plate_pressure(2, cfg, pt.breakdown) / pt.breakdown.p_eq_avg
                          : std::numeric_limits<double>::quiet_NaN();
      pt.ok = true;
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      pt.breakdown = PressureBreakdown{nan, nan, nan, nan, nan, nan, nan, nan, nan, nan, nan};
      pt.normalized = nan;
      pt.ok = false;
      pt.error = e.what();
    }
  });

  for (std::size_t i = 0; i < values.size(); ++i) out.normalized[i] = out.points[i].normalized;
  return out;
}

}  // namespace fluct
