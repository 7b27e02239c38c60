// Deterministic adaptive 1-D integration (Gauss-Kronrod 7/15) with mandatory
// breakpoints, a semi-infinite mapping, and the Matsubara frequency ladder.
#pragma once

#include <functional>
#include <vector>

#include "fluctoforce/errors.hpp"

namespace fluct {

struct QuadratureSpec {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;
  int max_subdivisions = 4000;
  // Mandatory split abscissae. Values outside the integration domain are
  // ignored; the list need not be sorted.
  std::vector<double> breakpoints;
};

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error bound
  long evaluations = 0;
};

// Integrates f over [lo, hi] until |error| <= max(abs_tol, rel_tol*|value|).
// Deterministic for fixed inputs: subdivision order and the final summation
// order are fixed. Throws QuadratureError (carrying the best estimate) if the
// tolerance is not reached within max_subdivisions panel splits.
IntegralResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                  const QuadratureSpec& spec);

// Integrates f over [lo, inf) for integrands decaying at least exponentially
// on the given scale; maps x = lo + decay_scale*u/(1-u) onto u in [0,1).
// Breakpoints are interpreted on the x axis. Same contract as
// integrate_adaptive.
IntegralResult integrate_semi_infinite(const std::function<double(double)>& f, double lo,
                                       double decay_scale, const QuadratureSpec& spec);

// Matsubara ladder: xi_n = 2 pi n k_B T / hbar. The n = 0 rung carries half
// weight (primed-sum convention).
double matsubara_xi(double T, int n);
constexpr double matsubara_weight(int n) { return n == 0 ? 0.5 : 1.0; }

struct MatsubaraSum {
  double value = 0.0;          // sum of weight(n) * term(n)
  double tail_estimate = 0.0;  // geometric extrapolation of the dropped tail
  int terms = 0;               // number of rungs consumed (indices 0..terms-1)
};

// Sums weight(n)*term(n, xi_n) for n = 0,1,2,... and stops once the
// geometric extrapolation of the last terms falls below rel_tail_tol of the
// running sum. term is called in index order (deterministic).
MatsubaraSum matsubara_sum(double T, double rel_tail_tol,
                           const std::function<double(int n, double xi)>& term,
                           int max_terms = 200000);

// The ladder rungs a given summand actually consumes under the tail rule.
std::vector<double> matsubara_frequencies(double T, double rel_tail_tol,
                                          const std::function<double(int n, double xi)>& term);

}  // namespace fluct
