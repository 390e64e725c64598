#pragma once

#include <cmath>
#include <limits>

#include "qed_decoherence/constants.hpp"
#include "qed_decoherence/errors.hpp"

namespace qed {

/// Physical time in seconds.
struct Seconds {
  double value = 0.0;
};

/// Dimensionless time Ωt.
struct ScaledTime {
  double value = 0.0;
};

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/**
 * Internal dimensionless unit system.
 *
 * Times are measured in Ω⁻¹, momenta in m₀c, lengths in c/Ω, masses in m₀ and
 * energies in m₀c². With c = m₀ = Ω = 1 the reduced Planck constant becomes
 * the number ε = ħΩ/m₀c², and the temperature enters through θ = ħΩ/k_BT
 * (so Ωτ_F = θ/π). A zero temperature maps to θ = +inf.
 */
class UnitSystem {
 public:
  UnitSystem(double omega_cut, double mass0, double temperature)
      : omega_(omega_cut), mass0_(mass0), temperature_(temperature) {
    if (!(omega_cut > 0.0) || !std::isfinite(omega_cut)) {
      throw DomainError("cutoff frequency must be positive and finite");
    }
    if (!(mass0 > 0.0) || !std::isfinite(mass0)) {
      throw DomainError("bare mass must be positive and finite");
    }
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
      throw DomainError("temperature must be finite and >= 0");
    }
  }

  double omega_cut() const { return omega_; }
  double mass0() const { return mass0_; }
  double temperature() const { return temperature_; }

  /// ε = ħΩ/(m₀c²), the scaled Planck constant.
  double hbar() const {
    return constants::hbar * omega_ /
           (mass0_ * constants::speed_of_light * constants::speed_of_light);
  }

  /// θ = ħΩ/(k_B T); +inf at T = 0.
  double theta() const {
    if (temperature_ == 0.0) return infinity;
    return constants::hbar * omega_ / (constants::boltzmann * temperature_);
  }

  ScaledTime scaled(Seconds t) const { return {t.value * omega_}; }
  Seconds seconds(ScaledTime s) const { return {s.value / omega_}; }

  double momentum_unit() const { return mass0_ * constants::speed_of_light; }
  double length_unit() const { return constants::speed_of_light / omega_; }
  double velocity_unit() const { return constants::speed_of_light; }
  double energy_unit() const {
    return mass0_ * constants::speed_of_light * constants::speed_of_light;
  }
  double acceleration_unit() const { return constants::speed_of_light * omega_; }
  /// Unit of the radiated-power estimate αε(q̈)²: m₀c²Ω.
  double power_unit() const { return energy_unit() * omega_; }

  double to_momentum_si(double p) const { return p * momentum_unit(); }
  double from_momentum_si(double p) const { return p / momentum_unit(); }
  double to_length_si(double x) const { return x * length_unit(); }
  double from_length_si(double x) const { return x / length_unit(); }

 private:
  double omega_;
  double mass0_;
  double temperature_;
};

}  // namespace qed
