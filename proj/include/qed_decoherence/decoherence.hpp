#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "qed_decoherence/errors.hpp"
#include "qed_decoherence/math.hpp"
#include "qed_decoherence/params.hpp"

namespace qed {

/**
 * Momentum-independent factors at one instant.
 *
 * The decoherence exponent of the element (p, p′) is gamma·(p − p′)² and its
 * phase is phi·(p² − p′²). Factors are in units of (m₀c)⁻², time in Ω⁻¹.
 */
struct DecoherenceFactors {
  double t = 0.0;
  double gamma_vac = 0.0;
  double gamma_th = 0.0;
  double gamma = 0.0;
  double phi = 0.0;
};

/// Γ_vac = κ ln√(1 + s²).
inline double gamma_vac_factor(const Model& m, ScaledTime t) {
  return m.kappa() * math::log_sqrt1p_sq(t.value);
}

/// Γ_th = κ ln[sinh x / x] with x = t/τ_F; exactly zero at T = 0.
inline double gamma_th_factor(const Model& m, ScaledTime t) {
  if (m.zero_temperature()) return 0.0;
  return m.kappa() * math::log_sinhc(t.value / m.thermal_time_scaled());
}

/// Interaction part of the phase factor, κ(s − arctan s).
inline double phase_interaction(const Model& m, ScaledTime t) {
  return m.kappa() * math::s_minus_atan(t.value);
}

/// Φ = κ(s − arctan s) − s/(2ε); the second term is the free evolution.
inline double phase_factor(const Model& m, ScaledTime t) {
  return phase_interaction(m, t) - t.value / (2.0 * m.hbar());
}

/// ξ(p, t) = κp²(s − arctan s) for a momentum magnitude p in m₀c.
inline double xi(const Model& m, double p, ScaledTime t) {
  return p * p * phase_interaction(m, t);
}

inline DecoherenceFactors factors_at(const Model& m, ScaledTime t) {
  if (!(t.value >= 0.0)) throw DomainError("time must be >= 0");
  DecoherenceFactors f;
  f.t = t.value;
  f.gamma_vac = gamma_vac_factor(m, t);
  f.gamma_th = gamma_th_factor(m, t);
  f.gamma = f.gamma_vac + f.gamma_th;
  f.phi = phase_factor(m, t);
  return f;
}

inline DecoherenceFactors factors_at(const Model& m, Seconds t) {
  return factors_at(m, m.scaled(t));
}

/// Γ^{p,p'}(t) = Γ(t)·Δ² for a momentum separation Δ.
inline double decoherence_function(const Model& m, double dp, ScaledTime t) {
  return (gamma_vac_factor(m, t) + gamma_th_factor(m, t)) * dp * dp;
}

/// J(ω) = κ Δ² ω e^{−ω/Ω}, with ω in rad/s; result in rad/s.
inline double spectral_density(const Model& m, double omega, double dp) {
  if (!(omega >= 0.0)) throw DomainError("frequency must be >= 0");
  const double omega_cut = m.params().omega_cut;
  return m.kappa() * dp * dp * omega * std::exp(-omega / omega_cut);
}

// Regime branches ----------------------------------------------------------

enum class Regime {
  early,         // t ≪ Ω⁻¹
  intermediate,  // Ω⁻¹ ≪ t ≪ τ_F
  late,          // t ≫ τ_F
};

enum class PhaseRegime {
  early,  // t ≪ Ω⁻¹
  late,   // t ≫ Ω⁻¹
};

inline std::string to_string(Regime r) {
  switch (r) {
    case Regime::early: return "early";
    case Regime::intermediate: return "intermediate";
    case Regime::late: return "late";
  }
  return "?";
}

/// Guard bands: each branch stays within 2% of the factor it approximates.
struct RegimeBands {
  double early_max_s = 0.1;
  double intermediate_min_s = 10.0;
  double intermediate_max_x = 0.1;  // x = t/τ_F
  double late_min_x = 1e3;
  double phase_late_min_s = 100.0;
};

inline bool in_regime(const Model& m, ScaledTime t, Regime r,
                      const RegimeBands& b = {}) {
  const double s = t.value;
  const double x = s / m.thermal_time_scaled();
  switch (r) {
    case Regime::early: return s >= 0.0 && s <= b.early_max_s;
    case Regime::intermediate:
      return s >= b.intermediate_min_s && x <= b.intermediate_max_x;
    case Regime::late: return !m.zero_temperature() && x >= b.late_min_x;
  }
  return false;
}

inline bool in_regime(ScaledTime t, PhaseRegime r, const RegimeBands& b = {}) {
  const double s = t.value;
  if (r == PhaseRegime::early) return s >= 0.0 && s <= b.early_max_s;
  return s >= b.phase_late_min_s;
}

/// The regime whose guard band contains t, if any.
inline std::optional<Regime> classify(const Model& m, ScaledTime t,
                                      const RegimeBands& b = {}) {
  for (Regime r : {Regime::early, Regime::intermediate, Regime::late}) {
    if (in_regime(m, t, r, b)) return r;
  }
  return std::nullopt;
}

namespace detail {

[[noreturn]] inline void outside_band(ScaledTime t, const std::string& name) {
  std::ostringstream msg;
  msg << "Omega*t = " << t.value << " lies outside the " << name
      << " guard band";
  throw RangeError(msg.str());
}

}  // namespace detail

/**
 * Branch approximation of Γ. The early and intermediate branches approximate
 * Γ_vac and the late branch approximates Γ_th; compare against those.
 */
inline double gamma_regime_approx(const Model& m, ScaledTime t, Regime r,
                                  const RegimeBands& b = {}) {
  if (!in_regime(m, t, r, b)) detail::outside_band(t, to_string(r));
  const double s = t.value;
  switch (r) {
    case Regime::early: return m.kappa() * s * s / 2.0;
    case Regime::intermediate: return m.kappa() * std::log(s);
    case Regime::late: return m.kappa() * s / m.thermal_time_scaled();
  }
  return 0.0;
}

/// The exact factor that gamma_regime_approx approximates in regime r.
inline double gamma_regime_target(const Model& m, ScaledTime t, Regime r) {
  return r == Regime::late ? gamma_th_factor(m, t) : gamma_vac_factor(m, t);
}

/// Branch forms of the interaction part κ(s − atan s): κs³/3 early, κs late.
inline double phase_interaction_regime_approx(const Model& m, ScaledTime t, PhaseRegime r,
                                              const RegimeBands& b = {}) {
  if (!in_regime(t, r, b)) {
    detail::outside_band(t, r == PhaseRegime::early ? "early phase" : "late phase");
  }
  const double s = t.value;
  if (r == PhaseRegime::early) return m.kappa() * s * s * s / 3.0;
  return m.kappa() * s;
}

/// Branch forms of the full phase, free term −s/2ε included.
inline double phi_regime_approx(const Model& m, ScaledTime t, PhaseRegime r,
                                const RegimeBands& b = {}) {
  return phase_interaction_regime_approx(m, t, r, b) - t.value / (2.0 * m.hbar());
}

/// |ρ(p,p′,t)/ρ(p,p′,0)| = exp[−Γ(t)Δ²].
inline double coherence_ratio(const Model& m, double dp, ScaledTime t) {
  return std::exp(-decoherence_function(m, dp, t));
}

/// Branch forms of the coherence ratio: 1 − κΔ²s²/2, s^{−κΔ²}, e^{−κΔ²x}.
inline double coherence_ratio_approx(const Model& m, double dp, ScaledTime t,
                                     Regime r, const RegimeBands& b = {}) {
  if (!in_regime(m, t, r, b)) detail::outside_band(t, to_string(r));
  const double zeta = m.kappa() * dp * dp;
  const double s = t.value;
  switch (r) {
    case Regime::early: return 1.0 - zeta * s * s / 2.0;
    case Regime::intermediate: return std::pow(s, -zeta);
    case Regime::late: return std::exp(-zeta * s / m.thermal_time_scaled());
  }
  return 0.0;
}

}  // namespace qed
