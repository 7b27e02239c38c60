// Physical constants (CODATA 2018, SI units).
#pragma once

namespace fluct {

struct PhysicalConstants {
  double hbar;      // reduced Planck constant, J s
  double c;         // speed of light, m/s
  double k_B;       // Boltzmann constant, J/K
  double sigma_SB;  // Stefan-Boltzmann constant, W m^-2 K^-4
};

// h, c and k_B are exact in the 2019 SI; sigma follows from them.
inline constexpr PhysicalConstants codata{
    1.054571817e-34,
    299792458.0,
    1.380649e-23,
    5.670374419e-8,
};

}  // namespace fluct
