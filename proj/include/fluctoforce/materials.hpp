// Dielectric response models: two-resonance Lorentz-Drude permittivity on the
// real and imaginary frequency axes, optical dilution, Maxwell-Garnett
// effective medium, and the porous-composite resonance predictor.
#pragma once

#include <complex>
#include <vector>

#include "fluctoforce/errors.hpp"

namespace fluct {

// Two-oscillator model: a low-lying (far-infrared polariton) resonance plus a
// core-electron resonance. Both strengths are divided by the dilution factor.
struct OscillatorModel {
  double low_strength = 0.0;   // dimensionless, >= 0
  double low_omega = 0.0;      // rad/s, > 0
  double low_damping = 0.0;    // rad/s, > 0
  double core_strength = 0.0;  // dimensionless, >= 0
  double core_omega = 0.0;     // rad/s, > 0
  double core_damping = 0.0;   // rad/s, > 0
  double dilution = 1.0;       // dimensionless, >= 1

  void validate() const;  // throws std::invalid_argument
};

enum class MaterialKind { Vacuum, LorentzDrude, MaxwellGarnett };

// Closed variant set: vacuum, a Lorentz-Drude dielectric, or a Maxwell-Garnett
// composite of a Lorentz-Drude host with the given porosity.
class Material {
 public:
  Material() = default;  // vacuum

  static Material vacuum();
  static Material lorentz_drude(const OscillatorModel& model);
  static Material maxwell_garnett(const OscillatorModel& host, double porosity);

  MaterialKind kind() const { return kind_; }
  bool is_vacuum() const { return kind_ == MaterialKind::Vacuum; }
  const OscillatorModel& oscillator() const;  // LorentzDrude model or MG host
  double porosity() const;                    // MaxwellGarnett only

 private:
  MaterialKind kind_ = MaterialKind::Vacuum;
  OscillatorModel model_{};
  double porosity_ = 0.0;
};

// eps(omega) on the real frequency axis; omega >= 0. Im >= 0 for valid models.
std::complex<double> permittivity(const Material& m, double omega);

// eps(i xi) on the imaginary axis; real, >= 1, non-increasing in xi.
double permittivity_imag_axis(const Material& m, double xi);

// Maxwell-Garnett mapping: solves (e_eff-1)/(e_eff+2) = (1-phi)(e-1)/(e+2).
// Throws SingularInputError when |1-g| falls below 1e-9.
std::complex<double> maxwell_garnett(std::complex<double> eps_host, double phi);
double maxwell_garnett_real(double eps_host, double phi);  // imaginary-axis path

// Predicted composite resonance: low_omega * sqrt(1 + phi*C/(phi*D + 3)) with
// C, D the diluted strengths. Valid for low_omega << core_omega; warns on
// stderr when the ratio exceeds 1e-2.
double aerogel_resonance(const OscillatorModel& host, double phi);

// Real-axis frequencies where the absorption/reflection structure of this
// material concentrates (bulk resonances with +-5*damping flanks plus the
// eps = -1 and eps = 0 crossings, porosity-shifted for composites). Intended
// as mandatory quadrature breakpoints.
std::vector<double> resonance_markers(const Material& m);

}  // namespace fluct
