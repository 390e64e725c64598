#pragma once

#include <numbers>

// CODATA 2018 values, SI units.
namespace qed::constants {

inline constexpr double hbar = 1.054571817e-34;         // J s (exact)
inline constexpr double speed_of_light = 299792458.0;  // m/s (exact)
inline constexpr double boltzmann = 1.380649e-23;      // J/K (exact)
inline constexpr double elementary_charge = 1.602176634e-19;  // C (exact)
inline constexpr double electron_mass = 9.1093837015e-31;     // kg
inline constexpr double fine_structure = 7.2973525693e-3;

inline constexpr double pi = std::numbers::pi;

}  // namespace qed::constants
