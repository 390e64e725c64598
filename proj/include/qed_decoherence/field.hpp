#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "qed_decoherence/errors.hpp"
#include "qed_decoherence/math.hpp"
#include "qed_decoherence/observables.hpp"
#include "qed_decoherence/params.hpp"

namespace qed {

/// Photon cloud dressing a sharp momentum component p̄.
struct CloudState {
  double p_bar = 0.0;      // |p̄| in m₀c
  double t = 0.0;          // Ωt
  double n_mean = 0.0;     // photons
  double e_mean = 0.0;     // m₀c²
  double delta_f_m = 0.0;  // m₀
};

/// ⟨n⟩ = κ p̄² ln(1 + s²).
inline double mean_photon_number(const Model& m, double p_bar, ScaledTime t) {
  return 2.0 * m.kappa() * p_bar * p_bar * math::log_sqrt1p_sq(t.value);
}

/// ⟨E_F⟩ = (8α/3π) ε [s²/(1+s²)] p̄²/2, in m₀c².
inline double mean_field_energy(const Model& m, double p_bar, ScaledTime t) {
  return 4.0 * m.kappa() * m.hbar() * math::saturation(t.value) * p_bar * p_bar / 2.0;
}

/// Mass shift seen from the field side, δ_F m = −2δm.
inline double field_mass_shift(const Model& m, ScaledTime t) {
  return -2.0 * mass_shift(m, t);
}

inline CloudState cloud_state(const Model& m, double p_bar, ScaledTime t) {
  return {p_bar, t.value, mean_photon_number(m, p_bar, t),
          mean_field_energy(m, p_bar, t), field_mass_shift(m, t)};
}

/**
 * Occupation |β|² of one field mode.
 *
 * @param p_proj  projection p̄·ε̂ of the momentum on the mode polarization (m₀c)
 * @param u       mode frequency ω/Ω
 * @param x       X = k̂·v₀/c
 * @param volume  quantization volume in (c/Ω)³
 */
inline double mode_occupation(const Model& m, double p_proj, double u, double x,
                              ScaledTime t, double volume) {
  if (!(u > 0.0)) throw DomainError("mode frequency must be positive");
  if (!(std::abs(x) < 1.0)) throw DomainError("|X| must be < 1");
  if (!(volume > 0.0)) throw DomainError("quantization volume must be positive");
  const double w = 1.0 - x;
  const double half = 0.5 * u * t.value * w;
  // 1 − cos φ = 2 sin²(φ/2) keeps full precision for small φ.
  const double one_minus_cos = 2.0 * std::sin(half) * std::sin(half);
  return 4.0 * std::numbers::pi * m.alpha() * p_proj * p_proj * one_minus_cos /
         (volume * u * u * u * w * w);
}

/// Coherent amplitude β of one mode, including the e^{−ik·r₀} factor via the
/// scalar k̂·r₀ (r₀ in c/Ω).
inline std::complex<double> mode_amplitude(const Model& m, double p_proj,
                                           double u, double x, double k_dot_r0,
                                           ScaledTime t, double volume) {
  if (!(u > 0.0)) throw DomainError("mode frequency must be positive");
  if (!(std::abs(x) < 1.0)) throw DomainError("|X| must be < 1");
  const double w = 1.0 - x;
  const std::complex<double> i{0.0, 1.0};
  const std::complex<double> ratio =
      (1.0 - std::exp(i * (u * w * t.value))) / (u * w);
  return -p_proj * std::sqrt(2.0 * std::numbers::pi * m.alpha() / (volume * u)) *
         ratio * std::exp(-i * (u * k_dot_r0));
}

namespace detail {

/// Diagonal-in-mode element ⟨λ|ρ_F|λ′⟩ of the reduced field state for a
/// single mode carrying amplitude β (unit normalization).
inline std::complex<double> coherent_element(std::complex<double> lambda,
                                             std::complex<double> lambda_prime,
                                             std::complex<double> beta) {
  const double b2 = std::norm(beta);
  return std::exp(-0.5 * std::norm(lambda) - 0.5 * std::norm(lambda_prime) - b2 +
                  std::conj(lambda) * beta + lambda_prime * std::conj(beta));
}

}  // namespace detail

}  // namespace qed
