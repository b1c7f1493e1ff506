#pragma once

#include <numbers>

namespace nanograting::constants {

inline constexpr double pi = std::numbers::pi;

// SI 2019 exact values.
inline constexpr double planck = 6.62607015e-34;       // J s
inline constexpr double hbar = planck / (2.0 * pi);    // J s
inline constexpr double boltzmann = 1.380649e-23;      // J/K
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

inline constexpr double standard_gravity = 9.81;  // m/s^2, value used for the beamline fits

// Rubidium D2 line, vacuum wavelength.
inline constexpr double rubidium_d2_wavelength = 780.241e-9;  // m

}  // namespace nanograting::constants
