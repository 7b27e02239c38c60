#include "fluctoforce/csv.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace fluct::csv {

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

void write_breakdown_csv(std::ostream& os, const SweepResult& result) {
  os << kBreakdownVersion << "\n";
  os << "# axis: " << result.axis_name << "\n";
  os << kBreakdownHeader << "\n";
  for (const SweepPoint& pt : result.points) {
    const PressureBreakdown& b = pt.breakdown;
    os << format_value(pt.axis_value) << ',' << format_value(b.p_eq_T1) << ','
       << format_value(b.p_eq_T2) << ',' << format_value(b.p_eq_avg) << ','
       << format_value(b.dp_pw) << ',' << format_value(b.dp_ew) << ','
       << format_value(b.distance_independent) << ',' << format_value(b.sb_inside) << ','
       << format_value(b.p_neq_total) << ',' << format_value(b.plate1_total) << ','
       << format_value(b.plate2_total) << ',' << format_value(pt.normalized) << ','
       << format_value(b.error_estimate) << "\n";
  }
}

void write_equilibria_csv(std::ostream& os, const std::vector<EquilibriumPoint>& points,
                          const std::vector<double>& plate2_residuals) {
  os << kEquilibriaVersion << "\n";
  os << kEquilibriaHeader << "\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const EquilibriumPoint& pt = points[i];
    const double residual = i < plate2_residuals.size() ? plate2_residuals[i]
                                                        : std::numeric_limits<double>::quiet_NaN();
    os << format_value(pt.separation) << ','
       << (pt.stability == Stability::Stable ? "stable" : "unstable") << ','
       << format_value(pt.pressure_slope) << ',' << format_value(residual) << "\n";
  }
}

}  // namespace fluct::csv
