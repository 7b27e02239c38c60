// Wave-vector bookkeeping, Fresnel coefficients, and the two-layer slab
// reflection coefficient for both polarizations, on the real and imaginary
// frequency axes.
#pragma once

#include <complex>

#include "fluctoforce/errors.hpp"
#include "fluctoforce/materials.hpp"

namespace fluct {

// M: transverse electric, N: transverse magnetic.
enum class Polarization { M, N };

enum class FrequencyAxis { Real, Imaginary };

// A transverse mode (omega, k_perp). Propagating when k_perp < omega/c,
// evanescent when k_perp > omega/c. On the imaginary axis omega is read as
// the Matsubara frequency xi.
struct TransverseWave {
  double omega = 0.0;   // rad/s, >= 0
  double k_perp = 0.0;  // rad/m, >= 0

  void validate() const;
};

// A dielectric layer of the given thickness on a semi-infinite substrate.
struct LayeredSlab {
  Material layer;
  double thickness = 0.0;  // m, >= 0
  Material substrate;
  bool outer_face_blackened = true;

  void validate() const;
};

// q = sqrt(eps*omega^2/c^2 - k_perp^2), branch with Im q >= 0 (decaying
// evanescent waves); Re q >= 0 when Im q = 0.
std::complex<double> axial_wavenumber(std::complex<double> eps, const TransverseWave& wave);

// Interface reflection a -> b. N: (eps_b q_a - eps_a q_b)/(eps_a q_b + eps_b q_a);
// M: (q_a - q_b)/(q_a + q_b). Throws SingularInputError on a degenerate
// denominator.
std::complex<double> fresnel(Polarization pol, std::complex<double> eps_a,
                             std::complex<double> eps_b, const TransverseWave& wave);

// Vacuum-side reflection of the layer+substrate stack:
// r = (r1 + r2 e^{2i d q_l}) / (1 + r1 r2 e^{2i d q_l}).
// On the imaginary axis the result is real (returned with zero imaginary
// part); wave.omega is then the Matsubara frequency.
std::complex<double> slab_reflection(const LayeredSlab& slab, Polarization pol,
                                     const TransverseWave& wave, FrequencyAxis axis);

// Hot-path kernels with caller-evaluated permittivities (the eps values
// depend on frequency only, so integrations over k_perp reuse them).
std::complex<double> slab_reflection_eps(Polarization pol, std::complex<double> eps_layer,
                                         std::complex<double> eps_sub, double thickness,
                                         double omega, double k_perp);
double slab_reflection_imag_eps(Polarization pol, double eps_layer, double eps_sub,
                                double thickness, double xi, double k_perp);

}  // namespace fluct
