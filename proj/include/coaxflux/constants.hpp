#pragma once

#include <cmath>

namespace coaxflux::constants {

// CODATA 2018 values (SI). h, k_B and c are exact by definition.
inline constexpr double planck      = 6.62607015e-34;   // J*s
inline constexpr double hbar        = 1.054571817e-34;  // J*s
inline constexpr double boltzmann   = 1.380649e-23;     // J/K
inline constexpr double light_speed = 299792458.0;      // m/s
inline constexpr double mu0         = 1.25663706212e-6; // H/m
inline constexpr double eps0        = 8.8541878128e-12; // F/m

inline constexpr double pi = 3.14159265358979323846;

/// Free-space impedance sqrt(mu0/eps0), ~376.73 Ohm.
inline const double z_vac = std::sqrt(mu0 / eps0);

/// Attenuation unit conversion: alpha[dB/m] = np_to_db * alpha[Np/m].
inline constexpr double np_to_db = 8.685889638065035; // 20*log10(e)

} // namespace coaxflux::constants
