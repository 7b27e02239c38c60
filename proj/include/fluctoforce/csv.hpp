// CSV emission. Headers are versioned and pinned by golden tests; values are
// scientific notation with 12 significant digits, '.' decimal, UTF-8.
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fluctoforce/analysis.hpp"

namespace fluct::csv {

inline constexpr const char* kBreakdownVersion = "# fluctoforce csv v1";
inline constexpr const char* kBreakdownHeader =
    "axis_value,p_eq_T1,p_eq_T2,p_eq_avg,dp_pw,dp_ew,distance_independent,sb_inside,"
    "p_neq_total,plate1_total,plate2_total,normalized,error_estimate";

inline constexpr const char* kEquilibriaVersion = "# fluctoforce equilibria csv v1";
inline constexpr const char* kEquilibriaHeader = "separation,stability,pressure_slope,plate2_total";

std::string format_value(double v);  // %.11e (12 significant digits)

void write_breakdown_csv(std::ostream& os, const SweepResult& result);
void write_equilibria_csv(std::ostream& os, const std::vector<EquilibriumPoint>& points,
                          const std::vector<double>& plate2_residuals);

}  // namespace fluct::csv
