#include "fluctoforce/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "fluctoforce/constants.hpp"

namespace fluct {

namespace {

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK dqk15), positive half.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double lo, hi;
  double value;
  double error;
};

struct PanelWorse {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.lo > b.lo;  // tie-break: leftmost panel first
  }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi, long& evals) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  double fv[15];
  const double fc = f(center);
  fv[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }
  evals += 15;

  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double sum = fv[j] + fv[14 - j];
    resk += kWgk[j] * sum;
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }

  // QUADPACK-style error estimate based on the scaled deviation from the mean.
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));
  }
  resasc *= half;

  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  return Panel{lo, hi, resk * half, err};
}

double tolerance(const QuadratureSpec& spec, double value) {
  return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

IntegralResult run_adaptive(const std::function<double(double)>& f, double lo, double hi,
                            const QuadratureSpec& spec,
                            const std::vector<double>& inner_breaks) {
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> active;
  std::vector<Panel> frozen;  // panels too narrow to split further
  long evals = 0;

  std::vector<double> edges;
  edges.push_back(lo);
  for (double b : inner_breaks) edges.push_back(b);
  edges.push_back(hi);

  double total_v = 0.0, total_e = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = gk15(f, edges[i], edges[i + 1], evals);
    total_v += p.value;
    total_e += p.error;
    active.push(p);
  }

  int splits = 0;
  while (total_e > tolerance(spec, total_v) && !active.empty()) {
    if (splits >= spec.max_subdivisions) {
      throw QuadratureError("integrate_adaptive: tolerance not reached after max_subdivisions",
                            total_v, total_e);
    }
    Panel worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Interval width at the floating-point floor; keep its estimate as is.
      frozen.push_back(worst);
      continue;
    }
    Panel left = gk15(f, worst.lo, mid, evals);
    Panel right = gk15(f, mid, worst.hi, evals);
    total_v += left.value + right.value - worst.value;
    total_e += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
    ++splits;
  }

  // Deterministic final reduction: sum panels ordered by position. This also
  // sheds the error drift accumulated by the incremental +/- updates above.
  std::vector<Panel> panels = std::move(frozen);
  while (!active.empty()) {
    panels.push_back(active.top());
    active.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  IntegralResult out;
  for (const Panel& p : panels) {
    out.value += p.value;
    out.error += p.error;
  }
  out.evaluations = evals;
  if (out.error > tolerance(spec, out.value)) {
    // Rare: the re-summation can land just above the stop threshold.
    if (out.error > 2.0 * tolerance(spec, out.value)) {
      throw QuadratureError("integrate_adaptive: tolerance not reached", out.value, out.error);
    }
  }
  return out;
}

}  // namespace

IntegralResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                  const QuadratureSpec& spec) {
  if (!(lo < hi)) throw std::invalid_argument("integrate_adaptive: requires lo < hi");
  if (!(spec.rel_tol > 0.0) || spec.abs_tol < 0.0) {
    throw std::invalid_argument("integrate_adaptive: bad tolerances");
  }
  std::vector<double> breaks;
  for (double b : spec.breakpoints) {
    if (b > lo && b < hi) breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return run_adaptive(f, lo, hi, spec, breaks);
}

IntegralResult integrate_semi_infinite(const std::function<double(double)>& f, double lo,
                                       double decay_scale, const QuadratureSpec& spec) {
  if (!(decay_scale > 0.0)) {
    throw std::invalid_argument("integrate_semi_infinite: decay_scale must be positive");
  }
  // x = lo + s*u/(1-u), dx = s/(1-u)^2 du. Kronrod nodes are interior, so
  // u = 1 is never evaluated.
  auto g = [&f, lo, decay_scale](double u) {
    const double om = 1.0 - u;
    const double x = lo + decay_scale * u / om;
    const double jac = decay_scale / (om * om);
    const double fx = f(x);
    return fx == 0.0 ? 0.0 : fx * jac;  // avoid 0*inf near u -> 1
  };
  QuadratureSpec mapped = spec;
  mapped.breakpoints.clear();
  for (double b : spec.breakpoints) {
    if (b > lo) mapped.breakpoints.push_back((b - lo) / (b - lo + decay_scale));
  }
  return integrate_adaptive(g, 0.0, 1.0, mapped);
}

double matsubara_xi(double T, int n) {
  if (!(T > 0.0)) throw std::invalid_argument("matsubara_xi: T must be positive");
  if (n < 0) throw std::invalid_argument("matsubara_xi: n must be non-negative");
  return 2.0 * M_PI * n * codata.k_B * T / codata.hbar;
}

MatsubaraSum matsubara_sum(double T, double rel_tail_tol,
                           const std::function<double(int n, double xi)>& term, int max_terms) {
  if (!(rel_tail_tol > 0.0)) throw std::invalid_argument("matsubara_sum: bad tail tolerance");
  MatsubaraSum out;
  double prev1 = 0.0, prev2 = 0.0;  // |t_{n-1}|, |t_{n-2}|
  double peak = 0.0;
  for (int n = 0; n < max_terms; ++n) {
    const double t = matsubara_weight(n) * term(n, matsubara_xi(T, n));
    out.value += t;
    out.terms = n + 1;
    const double at = std::abs(t);
    peak = std::max(peak, at);

    // Geometric tail extrapolation once the terms are decreasing.
    if (n >= 3 && at <= prev1 && prev1 <= prev2) {
      const double ratio = prev1 > 0.0 ? std::min(at / prev1, 0.9999) : 0.0;
      out.tail_estimate = at * ratio / (1.0 - ratio);
      const double scale = std::max(std::abs(out.value), 1e-3 * peak);
      if (out.tail_estimate <= rel_tail_tol * scale) return out;
    }
    prev2 = prev1;
    prev1 = at;
  }
  return out;  // hit max_terms; tail_estimate reflects the last extrapolation
}

std::vector<double> matsubara_frequencies(double T, double rel_tail_tol,
                                          const std::function<double(int n, double xi)>& term) {
  std::vector<double> used;
  auto wrapped = [&](int n, double xi) {
    used.push_back(xi);
    return term(n, xi);
  };
  matsubara_sum(T, rel_tail_tol, wrapped);
  return used;
}

}  // namespace fluct
