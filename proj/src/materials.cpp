#include "fluctoforce/materials.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fluct {

namespace {

constexpr double kMgSingularFloor = 1e-9;  // minimum |1 - g|

// (e-1)/(e+2) with the imaginary part formed as 3*Im(e)/|e+2|^2, which keeps
// its sign exact for passive inputs.
std::complex<double> clausius_ratio(std::complex<double> eps) {
  const std::complex<double> d = eps + 2.0;
  const double n2 = std::norm(d);
  if (n2 == 0.0) throw SingularInputError("maxwell_garnett: eps_host at the -2 pole");
  const std::complex<double> num = (eps - 1.0) * std::conj(d);
  return {num.real() / n2, 3.0 * eps.imag() / n2};
}

}  // namespace

void OscillatorModel::validate() const {
  auto bad = [](double v) { return !std::isfinite(v); };
  if (bad(low_strength) || bad(low_omega) || bad(low_damping) || bad(core_strength) ||
      bad(core_omega) || bad(core_damping) || bad(dilution)) {
    throw std::invalid_argument("OscillatorModel: non-finite parameter");
  }
  if (low_strength < 0.0 || core_strength < 0.0) {
    throw std::invalid_argument("OscillatorModel: strengths must be >= 0");
  }
  if (!(low_omega > 0.0) || !(core_omega > 0.0)) {
    throw std::invalid_argument("OscillatorModel: resonance frequencies must be > 0");
  }
  if (!(low_damping > 0.0) || !(core_damping > 0.0)) {
    throw std::invalid_argument("OscillatorModel: damping rates must be > 0");
  }
  if (!(dilution >= 1.0)) {
    throw std::invalid_argument("OscillatorModel: dilution must be >= 1");
  }
}

Material Material::vacuum() { return Material{}; }

Material Material::lorentz_drude(const OscillatorModel& model) {
  model.validate();
  Material m;
  m.kind_ = MaterialKind::LorentzDrude;
  m.model_ = model;
  return m;
}

Material Material::maxwell_garnett(const OscillatorModel& host, double porosity) {
  host.validate();
  if (!(porosity >= 0.0 && porosity <= 1.0)) {
    throw std::invalid_argument("Material: porosity must be in [0, 1]");
  }
  Material m;
  m.kind_ = MaterialKind::MaxwellGarnett;
  m.model_ = host;
  m.porosity_ = porosity;
  return m;
}

const OscillatorModel& Material::oscillator() const {
  if (kind_ == MaterialKind::Vacuum) {
    throw std::logic_error("Material: vacuum has no oscillator model");
  }
  return model_;
}

double Material::porosity() const {
  if (kind_ != MaterialKind::MaxwellGarnett) {
    throw std::logic_error("Material: porosity is only defined for composites");
  }
  return porosity_;
}

std::complex<double> permittivity(const Material& m, double omega) {
  if (!(omega >= 0.0)) {
    throw std::invalid_argument("permittivity: omega must be finite and >= 0");
  }
  if (m.is_vacuum()) return {1.0, 0.0};

  const OscillatorModel& o = m.oscillator();
  const std::complex<double> iw{0.0, omega};
  const double cs = o.low_strength / o.dilution;
  const double ds = o.core_strength / o.dilution;
  const std::complex<double> eps =
      1.0 + cs * o.low_omega * o.low_omega / (o.low_omega * o.low_omega - omega * omega - o.low_damping * iw) +
      ds * o.core_omega * o.core_omega / (o.core_omega * o.core_omega - omega * omega - o.core_damping * iw);

  if (m.kind() == MaterialKind::MaxwellGarnett) return maxwell_garnett(eps, m.porosity());
  return eps;
}

double permittivity_imag_axis(const Material& m, double xi) {
  if (!(xi >= 0.0)) {
    throw std::invalid_argument("permittivity_imag_axis: xi must be finite and >= 0");
  }
  if (m.is_vacuum()) return 1.0;

  const OscillatorModel& o = m.oscillator();
  const double cs = o.low_strength / o.dilution;
  const double ds = o.core_strength / o.dilution;
  const double eps =
      1.0 + cs * o.low_omega * o.low_omega / (o.low_omega * o.low_omega + xi * xi + o.low_damping * xi) +
      ds * o.core_omega * o.core_omega / (o.core_omega * o.core_omega + xi * xi + o.core_damping * xi);

  if (m.kind() == MaterialKind::MaxwellGarnett) return maxwell_garnett_real(eps, m.porosity());
  return eps;
}

std::complex<double> maxwell_garnett(std::complex<double> eps_host, double phi) {
  if (!(phi >= 0.0 && phi <= 1.0)) {
    throw std::invalid_argument("maxwell_garnett: porosity must be in [0, 1]");
  }
  const std::complex<double> g = (1.0 - phi) * clausius_ratio(eps_host);
  const std::complex<double> d = 1.0 - g;
  const double n2 = std::norm(d);
  if (n2 < kMgSingularFloor * kMgSingularFloor) {
    throw SingularInputError("maxwell_garnett: singular mapping, |1 - g| below floor");
  }
  // (1+2g)/(1-g); imaginary part written as 3*Im(g)/|1-g|^2 to keep Im >= 0
  // exact for passive hosts.
  const std::complex<double> num = (1.0 + 2.0 * g) * std::conj(d);
  return {num.real() / n2, 3.0 * g.imag() / n2};
}

double maxwell_garnett_real(double eps_host, double phi) {
  if (!(phi >= 0.0 && phi <= 1.0)) {
    throw std::invalid_argument("maxwell_garnett: porosity must be in [0, 1]");
  }
  const double g = (1.0 - phi) * (eps_host - 1.0) / (eps_host + 2.0);
  if (std::abs(1.0 - g) < kMgSingularFloor) {
    throw SingularInputError("maxwell_garnett: singular mapping, |1 - g| below floor");
  }
  return (1.0 + 2.0 * g) / (1.0 - g);
}

double aerogel_resonance(const OscillatorModel& host, double phi) {
  host.validate();
  if (!(phi >= 0.0 && phi <= 1.0)) {
    throw std::invalid_argument("aerogel_resonance: porosity must be in [0, 1]");
  }
  if (host.low_omega / host.core_omega >= 1e-2) {
    std::fprintf(stderr,
                 "fluctoforce: aerogel_resonance called with low_omega/core_omega = %.3g "
                 "(validity requires << 1); result may be inaccurate\n",
                 host.low_omega / host.core_omega);
  }
  const double cs = host.low_strength / host.dilution;
  const double ds = host.core_strength / host.dilution;
  return host.low_omega * std::sqrt(1.0 + phi * cs / (phi * ds + 3.0));
}

namespace {

// Frequency where the low oscillator's permittivity (on a constant background
// bg from the core term) crosses the real value x: solves
// bg + C*w0^2/(w0^2 - w^2) = x for w. Returns 0 when there is no crossing
// above the resonance.
double crossing_frequency(double w0, double strength, double bg, double x) {
  const double denom = bg - x;
  if (!(denom > 0.0) || !(strength > 0.0)) return 0.0;
  return w0 * std::sqrt(1.0 + strength / denom);
}

void add_flanked(std::vector<double>& out, double center, double damping) {
  if (!(center > 0.0)) return;
  out.push_back(center - 5.0 * damping);
  out.push_back(center);
  out.push_back(center + 5.0 * damping);
}

}  // namespace

std::vector<double> resonance_markers(const Material& m) {
  std::vector<double> out;
  if (m.is_vacuum()) return out;

  const OscillatorModel& o = m.oscillator();
  const double cs = o.low_strength / o.dilution;
  const double ds = o.core_strength / o.dilution;

  if (m.kind() == MaterialKind::LorentzDrude) {
    add_flanked(out, o.low_omega, o.low_damping);
    // surface (eps = -1) and longitudinal (eps = 0) crossings of the low
    // oscillator on its core-electron background
    out.push_back(crossing_frequency(o.low_omega, cs, 1.0 + ds, -1.0));
    out.push_back(crossing_frequency(o.low_omega, cs, 1.0 + ds, 0.0));
  } else {
    const double phi = m.porosity();
    add_flanked(out, aerogel_resonance(o, phi), o.low_damping);
    if (phi < 1.0) {
      // Host-permittivity values at which the composite hits its pole,
      // eps_eff = -1 and eps_eff = 0.
      const double targets[3] = {phi > 0.0 ? -(3.0 - phi) / phi : 0.0, -1.0, 0.0};
      for (int k = 0; k < 3; ++k) {
        double x;
        if (k == 0) {
          if (!(phi > 0.0)) continue;
          x = targets[0];
        } else {
          const double g = (targets[k] - 1.0) / ((targets[k] + 2.0) * (1.0 - phi));
          if (std::abs(1.0 - g) < 1e-12) continue;
          x = (1.0 + 2.0 * g) / (1.0 - g);
        }
        out.push_back(crossing_frequency(o.low_omega, cs, 1.0 + ds, x));
      }
    }
  }

  // Core-electron resonance structure (same crossings, background 1).
  add_flanked(out, o.core_omega, o.core_damping);
  out.push_back(crossing_frequency(o.core_omega, ds, 1.0, -1.0));
  out.push_back(crossing_frequency(o.core_omega, ds, 1.0, 0.0));

  out.erase(std::remove_if(out.begin(), out.end(), [](double w) { return !(w > 0.0); }),
            out.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace fluct
