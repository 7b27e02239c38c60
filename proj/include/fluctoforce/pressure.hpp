// Pressure components between two layered slabs across a vacuum gap:
// equilibrium (Matsubara/Lifshitz), non-equilibrium propagating- and
// evanescent-wave terms, Stefan-Boltzmann terms, the distance-independent
// part, and the per-plate totals for blackened outer faces.
#pragma once

#include "fluctoforce/optics.hpp"

namespace fluct {

struct SystemConfig {
  LayeredSlab slab1;
  LayeredSlab slab2;
  double gap = 0.0;    // m, > 0
  double T1 = 0.0;     // K, > 0
  double T2 = 0.0;     // K, > 0
  double T_env = 0.0;  // K, > 0

  void validate() const;
};

// Sign convention: negative = attraction, positive = repulsion.
struct PressureBreakdown {
  double p_eq_T1 = 0.0;
  double p_eq_T2 = 0.0;
  double p_eq_avg = 0.0;
  double dp_pw = 0.0;
  double dp_ew = 0.0;
  double sb_inside = 0.0;               // (2 sigma / 3c)(T1^4 + T2^4)
  double distance_independent = 0.0;    // constant part of dp_pw
  double p_neq_total = 0.0;             // p_eq_avg + dp_pw + dp_ew + sb_inside
  double plate1_total = 0.0;            // NaN unless slab1 outer face blackened
  double plate2_total = 0.0;            // NaN unless slab2 outer face blackened
  double error_estimate = 0.0;          // combined quadrature error bound
};

struct SolverOptions {
  double rel_tol = 1e-6;              // per 1-D quadrature pass
  double abs_tol = 0.0;
  int max_subdivisions = 4000;
  double matsubara_tail_tol = 1e-8;
  double omega_cutoff_factor = 40.0;  // omega_max = factor * k_B max(T1,T2)/hbar
  double omega_floor_factor = 1e-6;   // omega_min = factor * k_B min(T1,T2)/hbar
  double evanescent_cutoff = 46.0;    // truncate where 2 a Im(k_z) exceeds this
};

// Bose-Einstein occupation 1/(e^{hbar w/k_B T} - 1); stable for small and
// large arguments. omega and T must be positive.
double bose_occupation(double omega, double T);

// Equilibrium Lifshitz pressure at temperature T and gap a (Pa, <= 0 for
// passive dielectrics). error_out, when non-null, receives the combined
// quadrature + Matsubara-tail error bound.
double equilibrium_pressure(const LayeredSlab& slab1, const LayeredSlab& slab2, double T,
                            double a, const SolverOptions& opt = {}, double* error_out = nullptr);

// Non-equilibrium pressure difference terms. Both vanish identically for
// T1 == T2, flip sign under (T1,T2) exchange and under slab exchange.
double delta_pneq_pw(const LayeredSlab& slab1, const LayeredSlab& slab2, double T1, double T2,
                     double a, const SolverOptions& opt = {}, double* error_out = nullptr);
double delta_pneq_ew(const LayeredSlab& slab1, const LayeredSlab& slab2, double T1, double T2,
                     double a, const SolverOptions& opt = {}, double* error_out = nullptr);

// The a-independent component of the propagating-wave term: the cavity factor
// 1/|D|^2 replaced by its phase average 1/(1 - |r1 r2|^2).
double distance_independent_part(const LayeredSlab& slab1, const LayeredSlab& slab2, double T1,
                                 double T2, const SolverOptions& opt = {},
                                 double* error_out = nullptr);

// Full itemized breakdown for a two-slab system.
PressureBreakdown total_inside_pressure(const SystemConfig& config, const SolverOptions& opt = {});

// Total pressure on plate alpha (1 or 2) with a blackened outer face:
// P_neq - (2 sigma/3c)(T_alpha^4 + T_env^4). Throws UnsupportedConfigError
// when that face is not blackened.
double plate_pressure(int alpha, const SystemConfig& config, const SolverOptions& opt = {});
double plate_pressure(int alpha, const SystemConfig& config, const PressureBreakdown& breakdown);

}  // namespace fluct
