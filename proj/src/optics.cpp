#include "fluctoforce/optics.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "fluctoforce/constants.hpp"

namespace fluct {

namespace {

constexpr double kDegenerateFloor = 1e-14;  // relative denominator floor

std::complex<double> fresnel_eps(Polarization pol, std::complex<double> eps_a,
                                 std::complex<double> eps_b, std::complex<double> q_a,
                                 std::complex<double> q_b) {
  if (pol == Polarization::M) {
    const std::complex<double> den = q_a + q_b;
    if (std::abs(den) <= kDegenerateFloor * (std::abs(q_a) + std::abs(q_b))) {
      throw SingularInputError("fresnel: degenerate denominator (M)");
    }
    return (q_a - q_b) / den;
  }
  const std::complex<double> ta = eps_a * q_b;
  const std::complex<double> tb = eps_b * q_a;
  const std::complex<double> den = ta + tb;
  if (std::abs(den) <= kDegenerateFloor * (std::abs(ta) + std::abs(tb))) {
    throw SingularInputError("fresnel: degenerate denominator (N)");
  }
  return (tb - ta) / den;
}

std::complex<double> combine_slab(std::complex<double> r1, std::complex<double> r2,
                                  std::complex<double> phase) {
  const std::complex<double> num = r1 + r2 * phase;
  const std::complex<double> den = 1.0 + r1 * r2 * phase;
  if (std::abs(den) <= kDegenerateFloor * (1.0 + std::abs(r1 * r2 * phase))) {
    throw SingularInputError("slab_reflection: degenerate denominator");
  }
  return num / den;
}

// kappa values are real and non-negative here, so the denominators can only
// degenerate by vanishing outright (xi = 0 with k_perp = 0).
double fresnel_imag(Polarization pol, double eps_a, double eps_b, double ka, double kb) {
  if (pol == Polarization::M) {
    const double den = ka + kb;
    if (den == 0.0) throw SingularInputError("fresnel: degenerate denominator (M, imaginary axis)");
    return (ka - kb) / den;
  }
  const double ta = eps_a * kb;
  const double tb = eps_b * ka;
  const double den = ta + tb;
  if (den == 0.0) throw SingularInputError("fresnel: degenerate denominator (N, imaginary axis)");
  return (tb - ta) / den;
}

}  // namespace

void TransverseWave::validate() const {
  if (!(omega >= 0.0) || !(k_perp >= 0.0)) {
    throw std::invalid_argument("TransverseWave: omega and k_perp must be finite and >= 0");
  }
}

void LayeredSlab::validate() const {
  if (!(thickness >= 0.0) || !std::isfinite(thickness)) {
    throw std::invalid_argument("LayeredSlab: thickness must be finite and >= 0");
  }
}

std::complex<double> axial_wavenumber(std::complex<double> eps, const TransverseWave& wave) {
  wave.validate();
  const double w_c = wave.omega / codata.c;
  std::complex<double> q = std::sqrt(eps * (w_c * w_c) - wave.k_perp * wave.k_perp);
  // Principal sqrt already gives Re >= 0; enforce the decaying branch.
  if (q.imag() < 0.0) q = -q;
  if (q.imag() == 0.0 && q.real() < 0.0) q = -q;
  return q;
}

std::complex<double> fresnel(Polarization pol, std::complex<double> eps_a,
                             std::complex<double> eps_b, const TransverseWave& wave) {
  wave.validate();
  if (eps_a == eps_b) return {0.0, 0.0};
  return fresnel_eps(pol, eps_a, eps_b, axial_wavenumber(eps_a, wave),
                     axial_wavenumber(eps_b, wave));
}

std::complex<double> slab_reflection_eps(Polarization pol, std::complex<double> eps_layer,
                                         std::complex<double> eps_sub, double thickness,
                                         double omega, double k_perp) {
  const TransverseWave wave{omega, k_perp};
  const std::complex<double> q0 = axial_wavenumber({1.0, 0.0}, wave);
  const std::complex<double> ql = axial_wavenumber(eps_layer, wave);
  const std::complex<double> qs = axial_wavenumber(eps_sub, wave);

  const std::complex<double> r1 =
      eps_layer == std::complex<double>{1.0, 0.0} ? std::complex<double>{0.0, 0.0}
                                                  : fresnel_eps(pol, {1.0, 0.0}, eps_layer, q0, ql);
  const std::complex<double> r2 =
      eps_layer == eps_sub ? std::complex<double>{0.0, 0.0}
                           : fresnel_eps(pol, eps_layer, eps_sub, ql, qs);

  // exponent 2i*d*ql has non-positive real part (Im ql >= 0): decaying
  const std::complex<double> arg = 2.0 * thickness * std::complex<double>{-ql.imag(), ql.real()};
  assert(arg.real() <= 0.0);
  return combine_slab(r1, r2, std::exp(arg));
}

double slab_reflection_imag_eps(Polarization pol, double eps_layer, double eps_sub,
                                double thickness, double xi, double k_perp) {
  // On the imaginary axis q_j = i*kappa_j with kappa_j real positive; all
  // arithmetic stays real.
  const double x_c = xi / codata.c;
  const double k2 = k_perp * k_perp;
  const double k0 = std::sqrt(x_c * x_c + k2);
  const double kl = std::sqrt(eps_layer * x_c * x_c + k2);
  const double ks = std::sqrt(eps_sub * x_c * x_c + k2);

  const double r1 = eps_layer == 1.0 ? 0.0 : fresnel_imag(pol, 1.0, eps_layer, k0, kl);
  const double r2 = eps_layer == eps_sub ? 0.0 : fresnel_imag(pol, eps_layer, eps_sub, kl, ks);

  const double att = std::exp(-2.0 * thickness * kl);
  const double den = 1.0 + r1 * r2 * att;
  if (std::abs(den) <= kDegenerateFloor * (1.0 + std::abs(r1 * r2 * att))) {
    throw SingularInputError("slab_reflection: degenerate denominator (imaginary axis)");
  }
  return (r1 + r2 * att) / den;
}

std::complex<double> slab_reflection(const LayeredSlab& slab, Polarization pol,
                                     const TransverseWave& wave, FrequencyAxis axis) {
  slab.validate();
  wave.validate();
  if (axis == FrequencyAxis::Imaginary) {
    const double el = permittivity_imag_axis(slab.layer, wave.omega);
    const double es = permittivity_imag_axis(slab.substrate, wave.omega);
    return {slab_reflection_imag_eps(pol, el, es, slab.thickness, wave.omega, wave.k_perp), 0.0};
  }
  const std::complex<double> el = permittivity(slab.layer, wave.omega);
  const std::complex<double> es = permittivity(slab.substrate, wave.omega);
  return slab_reflection_eps(pol, el, es, slab.thickness, wave.omega, wave.k_perp);
}

}  // namespace fluct
