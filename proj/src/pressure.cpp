#include "fluctoforce/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "fluctoforce/constants.hpp"
#include "fluctoforce/quadrature.hpp"

namespace fluct {

namespace {

constexpr double kLifshitzYSpan = 60.0;  // e^{-60} tail of the 2*kappa*a variable

struct SlabEps {
  std::complex<double> layer;
  std::complex<double> sub;
  double thickness;
};

// Raises the absolute tolerance of repeated inner integrals to
// rel_tol * (largest magnitude seen so far). Keeps near-cancelling inner
// integrals from chasing relative accuracy on values that are negligible
// against the quantities they are summed into. Deterministic: updates follow
// the (deterministic) outer evaluation order.
class ToleranceRatchet {
 public:
  explicit ToleranceRatchet(double rel_tol) : rel_tol_(rel_tol) {}
  double abs_tol() const { return rel_tol_ * scale_; }
  void update(double magnitude) { scale_ = std::max(scale_, magnitude); }

 private:
  double rel_tol_;
  double scale_ = 0.0;
};

double bose_difference(double omega, double T1, double T2) {
  return bose_occupation(omega, T1) - bose_occupation(omega, T2);
}

std::vector<double> gather_markers(const LayeredSlab& s1, const LayeredSlab& s2) {
  std::vector<double> out;
  for (const Material* m : {&s1.layer, &s1.substrate, &s2.layer, &s2.substrate}) {
    for (double w : resonance_markers(*m)) out.push_back(w);
  }
  return out;
}

// Shared assembly of the two propagating-wave double integrals:
//   (hbar/4pi^2) sum_P int dw [n(T1)-n(T2)] int_0^{w/c} dk_z k_z^2 N_P / W_P
// with N_P = |r2|^2 - |r1|^2 and W_P either the cavity factor |D_P|^2 or its
// phase average 1 - |r1 r2|^2 (the distance-independent part).
double propagating_integral(const LayeredSlab& s1, const LayeredSlab& s2, double T1, double T2,
                            double a, bool phase_averaged, const SolverOptions& opt,
                            double* error_out) {
  s1.validate();
  s2.validate();
  if (!(T1 > 0.0) || !(T2 > 0.0)) throw std::invalid_argument("temperatures must be positive");
  if (!phase_averaged && !(a > 0.0)) throw std::invalid_argument("gap must be positive");

  const double w_min = opt.omega_floor_factor * codata.k_B * std::min(T1, T2) / codata.hbar;
  const double w_max = opt.omega_cutoff_factor * codata.k_B * std::max(T1, T2) / codata.hbar;

  QuadratureSpec outer_spec{opt.rel_tol, opt.abs_tol, opt.max_subdivisions, gather_markers(s1, s2)};
  QuadratureSpec inner_spec{opt.rel_tol, 0.0, opt.max_subdivisions, {}};
  ToleranceRatchet ratchet(opt.rel_tol);

  auto outer = [&](double w) {
    const double dn = bose_difference(w, T1, T2);
    if (dn == 0.0) return 0.0;

    const SlabEps e1{permittivity(s1.layer, w), permittivity(s1.substrate, w), s1.thickness};
    const SlabEps e2{permittivity(s2.layer, w), permittivity(s2.substrate, w), s2.thickness};
    const double kz_max = w / codata.c;

    auto inner = [&](double kz) {
      const double kp2 = kz_max * kz_max - kz * kz;
      const double kp = kp2 > 0.0 ? std::sqrt(kp2) : 0.0;
      double sum = 0.0;
      for (Polarization pol : {Polarization::M, Polarization::N}) {
        const std::complex<double> r1 =
            slab_reflection_eps(pol, e1.layer, e1.sub, e1.thickness, w, kp);
        const std::complex<double> r2 =
            slab_reflection_eps(pol, e2.layer, e2.sub, e2.thickness, w, kp);
        const double num = std::norm(r2) - std::norm(r1);
        double weight;
        if (phase_averaged) {
          weight = 1.0 - std::norm(r1 * r2);
          if (!(weight > 0.0)) continue;  // grazing limit, contribution -> 0
        } else {
          const double phase = 2.0 * kz * a;
          weight =
              std::norm(1.0 - r1 * r2 * std::complex<double>{std::cos(phase), std::sin(phase)});
        }
        const double term = num / weight;
        if (std::isfinite(term)) sum += term;  // k_z -> 0: both r -> -1, ratio -> 0
      }
      return kz * kz * sum;
    };

    QuadratureSpec spec = inner_spec;
    spec.abs_tol = ratchet.abs_tol();
    const IntegralResult res = integrate_adaptive(inner, 0.0, kz_max, spec);
    ratchet.update(std::abs(res.value));
    return dn * res.value;
  };

  const IntegralResult res = integrate_adaptive(outer, w_min, w_max, outer_spec);
  const double prefactor = codata.hbar / (4.0 * M_PI * M_PI);
  const double value = prefactor * res.value;
  if (error_out) {
    // outer rule error + inner passes at rel_tol + omitted endpoint slivers
    const double sliver_lo = std::abs(outer(w_min)) * w_min;
    const double sliver_hi = std::abs(outer(w_max)) * (codata.k_B * std::max(T1, T2) / codata.hbar);
    *error_out = prefactor * (res.error + sliver_lo + sliver_hi) + opt.rel_tol * std::abs(value);
  }
  return value;
}

}  // namespace

void SystemConfig::validate() const {
  slab1.validate();
  slab2.validate();
  if (!(gap > 0.0)) throw std::invalid_argument("SystemConfig: gap must be positive");
  if (!(T1 > 0.0) || !(T2 > 0.0) || !(T_env > 0.0)) {
    throw std::invalid_argument("SystemConfig: temperatures must be positive");
  }
}

double bose_occupation(double omega, double T) {
  if (!(omega > 0.0)) throw std::invalid_argument("bose_occupation: omega must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("bose_occupation: T must be positive");
  return 1.0 / std::expm1(codata.hbar * omega / (codata.k_B * T));
}

double equilibrium_pressure(const LayeredSlab& slab1, const LayeredSlab& slab2, double T, double a,
                            const SolverOptions& opt, double* error_out) {
  slab1.validate();
  slab2.validate();
  if (!(T > 0.0)) throw std::invalid_argument("equilibrium_pressure: T must be positive");
  if (!(a > 0.0)) throw std::invalid_argument("equilibrium_pressure: a must be positive");

  const double inv_2a = 1.0 / (2.0 * a);
  const double inv_8a3 = inv_2a * inv_2a * inv_2a;
  QuadratureSpec spec{opt.rel_tol, 0.0, opt.max_subdivisions, {}};
  ToleranceRatchet ratchet(opt.rel_tol);
  double quad_error = 0.0;

  auto term = [&](int /*n*/, double xi) {
    const double el1 = permittivity_imag_axis(slab1.layer, xi);
    const double es1 = permittivity_imag_axis(slab1.substrate, xi);
    const double el2 = permittivity_imag_axis(slab2.layer, xi);
    const double es2 = permittivity_imag_axis(slab2.substrate, xi);
    const double y0 = 2.0 * a * xi / codata.c;
    const double xi_c2 = (xi / codata.c) * (xi / codata.c);

    // y = 2 kappa a; integrand y^2 rho e^{-y} / (1 - rho e^{-y})
    auto integrand = [&](double y) {
      const double kappa = y * inv_2a;
      const double kp2 = kappa * kappa - xi_c2;
      const double kp = kp2 > 0.0 ? std::sqrt(kp2) : 0.0;
      const double decay = std::exp(-y);
      double sum = 0.0;
      for (Polarization pol : {Polarization::M, Polarization::N}) {
        const double r1 = slab_reflection_imag_eps(pol, el1, es1, slab1.thickness, xi, kp);
        const double r2 = slab_reflection_imag_eps(pol, el2, es2, slab2.thickness, xi, kp);
        const double rho = r1 * r2;
        sum += rho * decay / (1.0 - rho * decay);
      }
      return y * y * sum;
    };

    QuadratureSpec s = spec;
    s.abs_tol = ratchet.abs_tol();
    const IntegralResult res = integrate_adaptive(integrand, y0, y0 + kLifshitzYSpan, s);
    ratchet.update(std::abs(res.value));
    quad_error += res.error;
    return res.value * inv_8a3;
  };

  const MatsubaraSum sum = matsubara_sum(T, opt.matsubara_tail_tol, term);
  const double prefactor = codata.k_B * T / M_PI;
  if (error_out) *error_out = prefactor * (quad_error * inv_8a3 + sum.tail_estimate);
  return -prefactor * sum.value;
}

double delta_pneq_pw(const LayeredSlab& slab1, const LayeredSlab& slab2, double T1, double T2,
                     double a, const SolverOptions& opt, double* error_out) {
  return propagating_integral(slab1, slab2, T1, T2, a, /*phase_averaged=*/false, opt, error_out);
}

double distance_independent_part(const LayeredSlab& slab1, const LayeredSlab& slab2, double T1,
                                 double T2, const SolverOptions& opt, double* error_out) {
  return propagating_integral(slab1, slab2, T1, T2, 0.0, /*phase_averaged=*/true, opt, error_out);
}

double delta_pneq_ew(const LayeredSlab& slab1, const LayeredSlab& slab2, double T1, double T2,
                     double a, const SolverOptions& opt, double* error_out) {
  slab1.validate();
  slab2.validate();
  if (!(T1 > 0.0) || !(T2 > 0.0)) throw std::invalid_argument("temperatures must be positive");
  if (!(a > 0.0)) throw std::invalid_argument("gap must be positive");

  const double w_min = opt.omega_floor_factor * codata.k_B * std::min(T1, T2) / codata.hbar;
  const double w_max = opt.omega_cutoff_factor * codata.k_B * std::max(T1, T2) / codata.hbar;
  const double inv_2a = 1.0 / (2.0 * a);
  const double inv_8a3 = inv_2a * inv_2a * inv_2a;

  QuadratureSpec outer_spec{opt.rel_tol, opt.abs_tol, opt.max_subdivisions,
                            gather_markers(slab1, slab2)};
  QuadratureSpec inner_spec{opt.rel_tol, 0.0, opt.max_subdivisions, {}};
  ToleranceRatchet ratchet(opt.rel_tol);

  auto outer = [&](double w) {
    const double dn = bose_difference(w, T1, T2);
    if (dn == 0.0) return 0.0;

    const SlabEps e1{permittivity(slab1.layer, w), permittivity(slab1.substrate, w),
                     slab1.thickness};
    const SlabEps e2{permittivity(slab2.layer, w), permittivity(slab2.substrate, w),
                     slab2.thickness};
    const double w_c = w / codata.c;

    // t = 2 a Im(k_z); integrand t^2 e^{-t} Im(r1 conj(r2)) / |D|^2
    auto inner = [&](double t) {
      const double kappa = t * inv_2a;
      const double kp = std::sqrt(kappa * kappa + w_c * w_c);
      const double decay = std::exp(-t);
      double sum = 0.0;
      for (Polarization pol : {Polarization::M, Polarization::N}) {
        const std::complex<double> r1 =
            slab_reflection_eps(pol, e1.layer, e1.sub, e1.thickness, w, kp);
        const std::complex<double> r2 =
            slab_reflection_eps(pol, e2.layer, e2.sub, e2.thickness, w, kp);
        const double num = std::imag(r1 * std::conj(r2));
        const double cavity = std::norm(1.0 - r1 * r2 * decay);
        const double term = num / cavity;
        if (std::isfinite(term)) sum += term;  // t -> 0 grazing limit is 0
      }
      return t * t * decay * sum;
    };

    QuadratureSpec spec = inner_spec;
    spec.abs_tol = ratchet.abs_tol();
    const IntegralResult res = integrate_adaptive(inner, 0.0, opt.evanescent_cutoff, spec);
    ratchet.update(std::abs(res.value));
    return dn * res.value;
  };

  const IntegralResult res = integrate_adaptive(outer, w_min, w_max, outer_spec);
  const double prefactor = -codata.hbar / (2.0 * M_PI * M_PI) * inv_8a3;
  const double value = prefactor * res.value;
  if (error_out) {
    const double sliver_lo = std::abs(outer(w_min)) * w_min;
    const double sliver_hi = std::abs(outer(w_max)) * (codata.k_B * std::max(T1, T2) / codata.hbar);
    *error_out =
        std::abs(prefactor) * (res.error + sliver_lo + sliver_hi) + opt.rel_tol * std::abs(value);
  }
  return value;
}

PressureBreakdown total_inside_pressure(const SystemConfig& config, const SolverOptions& opt) {
  config.validate();
  const double sb = 2.0 * codata.sigma_SB / (3.0 * codata.c);

  PressureBreakdown out;
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0, e5 = 0.0;
  out.p_eq_T1 = equilibrium_pressure(config.slab1, config.slab2, config.T1, config.gap, opt, &e1);
  out.p_eq_T2 = equilibrium_pressure(config.slab1, config.slab2, config.T2, config.gap, opt, &e2);
  out.p_eq_avg = 0.5 * (out.p_eq_T1 + out.p_eq_T2);
  out.dp_pw = delta_pneq_pw(config.slab1, config.slab2, config.T1, config.T2, config.gap, opt, &e3);
  out.dp_ew = delta_pneq_ew(config.slab1, config.slab2, config.T1, config.T2, config.gap, opt, &e4);
  out.distance_independent =
      distance_independent_part(config.slab1, config.slab2, config.T1, config.T2, opt, &e5);
  out.sb_inside = sb * (std::pow(config.T1, 4) + std::pow(config.T2, 4));
  out.p_neq_total = out.p_eq_avg + out.dp_pw + out.dp_ew + out.sb_inside;
  out.error_estimate = 0.5 * (e1 + e2) + e3 + e4 + e5;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.plate1_total =
      config.slab1.outer_face_blackened
          ? out.p_neq_total - sb * (std::pow(config.T1, 4) + std::pow(config.T_env, 4))
          : nan;
  out.plate2_total =
      config.slab2.outer_face_blackened
          ? out.p_neq_total - sb * (std::pow(config.T2, 4) + std::pow(config.T_env, 4))
          : nan;
  return out;
}

double plate_pressure(int alpha, const SystemConfig& config, const PressureBreakdown& breakdown) {
  if (alpha != 1 && alpha != 2) throw std::invalid_argument("plate_pressure: alpha must be 1 or 2");
  const LayeredSlab& slab = alpha == 1 ? config.slab1 : config.slab2;
  if (!slab.outer_face_blackened) {
    throw UnsupportedConfigError(
        "plate_pressure: only blackened outer faces are supported (set outer_face_blackened)");
  }
  const double sb = 2.0 * codata.sigma_SB / (3.0 * codata.c);
  const double T_alpha = alpha == 1 ? config.T1 : config.T2;
  return breakdown.p_neq_total - sb * (std::pow(T_alpha, 4) + std::pow(config.T_env, 4));
}

double plate_pressure(int alpha, const SystemConfig& config, const SolverOptions& opt) {
  return plate_pressure(alpha, config, total_inside_pressure(config, opt));
}

}  // namespace fluct
