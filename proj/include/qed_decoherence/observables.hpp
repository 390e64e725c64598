#pragma once

#include <cmath>

#include "qed_decoherence/decoherence.hpp"
#include "qed_decoherence/math.hpp"
#include "qed_decoherence/params.hpp"

// Derived quantities of the dressed packet. Lengths are in c/Ω, momenta in
// m₀c, velocities in c, masses in m₀ and accelerations in cΩ.
namespace qed {

struct ObservableSnapshot {
  double t = 0.0;  // Ωt
  double delta_p_t = 0.0;
  double l_p = 0.0;
  Vec3 mean_q{};
  Vec3 mean_v{};
  double mass_t = 1.0;
  double delta_m = 0.0;
  double inv_mass_avg = 1.0;
  double delta_r_t = 0.0;
  double delta_r_free = 0.0;
  double l_r = 0.0;
  double s_lin = 0.0;
  Vec3 accel{};
};

namespace detail {

inline Vec3 scaled(const Vec3& v, double k) { return {v[0] * k, v[1] * k, v[2] * k}; }

/// 6Γε²/Δr², which also equals 8Δp²Γ/3.
inline double decoherence_ratio(const Model& m, double gamma) {
  const double dr = m.delta_r();
  return 6.0 * gamma * m.hbar() * m.hbar() / (dr * dr);
}

/// 4αε/3π, the saturated relative mass shift.
inline double mass_shift_scale(const Model& m) { return 2.0 * m.kappa() * m.hbar(); }

}  // namespace detail

/// The momentum width never changes.
inline double momentum_width(const Model& m, ScaledTime) {
  return m.params().delta_p;
}

inline double momentum_coherence_length(const Model& m, ScaledTime t) {
  const double dp = m.params().delta_p;
  const double gamma = gamma_vac_factor(m, t) + gamma_th_factor(m, t);
  return dp / std::sqrt(1.0 + 8.0 * dp * dp * gamma / 3.0);
}

/// ⟨q⟩ = −2p₀Φε.
inline Vec3 mean_displacement(const Model& m, ScaledTime t) {
  return detail::scaled(m.params().p0, -2.0 * phase_factor(m, t) * m.hbar());
}

/// ⟨q̇⟩ = p₀[1 − (4αε/3π) s²/(1+s²)].
inline Vec3 mean_velocity(const Model& m, ScaledTime t) {
  const double k = 1.0 - detail::mass_shift_scale(m) * math::saturation(t.value);
  return detail::scaled(m.params().p0, k);
}

/// ⟨q̈⟩ = −p₀ (4αε/3π) 2s/(1+s²)².
inline Vec3 mean_acceleration(const Model& m, ScaledTime t) {
  const double s = t.value;
  const double w = 1.0 + s * s;
  return detail::scaled(m.params().p0,
                        -detail::mass_shift_scale(m) * 2.0 * s / (w * w));
}

/// δm/m₀ = (4αε/3π) s²/(1+s²).
inline double mass_shift(const Model& m, ScaledTime t) {
  return detail::mass_shift_scale(m) * math::saturation(t.value);
}

inline double dressed_mass(const Model& m, ScaledTime t) {
  return 1.0 + mass_shift(m, t);
}

/// ⟨1/m⟩_t = −2εΦ/s, continued to 1 at t = 0.
inline double inv_mass_time_average(const Model& m, ScaledTime t) {
  const double s = t.value;
  if (s == 0.0) return 1.0;
  return 1.0 - detail::mass_shift_scale(m) * math::s_minus_atan(s) / s;
}

/// Δr(t) = Δr √(1 + 6Γε²/Δr² + 9Φ²ε⁴/Δr⁴).
inline double spatial_width(const Model& m, ScaledTime t) {
  const double dr = m.delta_r();
  const double phi_term = 3.0 * phase_factor(m, t) * m.hbar() * m.hbar() / (dr * dr);
  const double gamma = gamma_vac_factor(m, t) + gamma_th_factor(m, t);
  return dr * std::sqrt(1.0 + detail::decoherence_ratio(m, gamma) +
                        phi_term * phi_term);
}

/// Free spreading Δr √(1 + Δp²t²/Δr²).
inline double spatial_width_free(const Model& m, ScaledTime t) {
  const double dr = m.delta_r();
  const double x = m.params().delta_p * t.value / dr;
  return dr * std::sqrt(1.0 + x * x);
}

inline double spatial_coherence_length(const Model& m, ScaledTime t) {
  const double gamma = gamma_vac_factor(m, t) + gamma_th_factor(m, t);
  return spatial_width(m, t) / std::sqrt(1.0 + detail::decoherence_ratio(m, gamma));
}

/// S_lin = 1 − 1/√(1 + 6Γε²/Δr²).
inline double linear_entropy(const Model& m, ScaledTime t) {
  const double gamma = gamma_vac_factor(m, t) + gamma_th_factor(m, t);
  const double r = detail::decoherence_ratio(m, gamma);
  // 1 − 1/√(1+r) written without cancellation for small r.
  const double root = std::sqrt(1.0 + r);
  return r / (root * (1.0 + root));
}

/// Radiated-power scale αε|q̈|² in units of m₀c²Ω; an estimate only.
inline double brems_power_estimate(const Model& m, ScaledTime t) {
  const double a = norm(mean_acceleration(m, t));
  return m.alpha() * m.hbar() * a * a;
}

inline ObservableSnapshot snapshot(const Model& m, ScaledTime t) {
  ObservableSnapshot o;
  o.t = t.value;
  o.delta_p_t = momentum_width(m, t);
  o.l_p = momentum_coherence_length(m, t);
  o.mean_q = mean_displacement(m, t);
  o.mean_v = mean_velocity(m, t);
  o.delta_m = mass_shift(m, t);
  o.mass_t = 1.0 + o.delta_m;
  o.inv_mass_avg = inv_mass_time_average(m, t);
  o.delta_r_t = spatial_width(m, t);
  o.delta_r_free = spatial_width_free(m, t);
  o.l_r = spatial_coherence_length(m, t);
  o.s_lin = linear_entropy(m, t);
  o.accel = mean_acceleration(m, t);
  return o;
}

/**
 * Whether the model applies at t: before the spreading limit τ_d and while the
 * dressed mean displacement stays within one width of the moving dipole
 * point r₀ + v₀t.
 */
inline bool within_validity(const Model& m, ScaledTime t) {
  const ModelParams& p = m.params();
  if (t.value > 1.0 / p.delta_p) return false;
  const double pn = norm(p.p0);
  const Vec3 dir = pn > 0.0 ? detail::scaled(p.p0, 1.0 / pn) : Vec3{};
  const Vec3 q = mean_displacement(m, t);
  const Vec3 moving = detail::scaled(dir, p.v0 * t.value);
  const double gap = std::hypot(q[0] - moving[0], q[1] - moving[1], q[2] - moving[2]);
  return gap <= spatial_width(m, t);
}

}  // namespace qed
