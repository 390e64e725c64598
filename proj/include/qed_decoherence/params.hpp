#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qed_decoherence/constants.hpp"
#include "qed_decoherence/errors.hpp"
#include "qed_decoherence/math.hpp"
#include "qed_decoherence/units.hpp"

namespace qed {

using Vec3 = std::array<double, 3>;

inline double norm(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }

/**
 * Physical inputs of a run.
 *
 * Momenta are given in units of m₀c, positions in c/Ω and the speed in c. The
 * remaining fields are SI. The defaults describe an electron with a cutoff of
 * 1e19 rad/s (ħΩ ≈ m_e c²/100) at 1 K.
 */
struct ModelParams {
  double alpha = constants::fine_structure;
  double omega_cut = 1e19;  // rad/s
  double temperature = 1.0;  // K
  double mass0 = constants::electron_mass;  // kg
  Vec3 p0{0.01, 0.0, 0.0};
  double delta_p = 0.1;
  Vec3 r0{0.0, 0.0, 0.0};
  double v0 = 0.01;

  /// Throws DomainError on a hard violation and returns soft warnings.
  std::vector<std::string> validate() const {
    std::vector<std::string> warnings;
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
      throw DomainError("alpha must be finite and >= 0 (0 selects free evolution)");
    }
    if (!(delta_p > 0.0) || !std::isfinite(delta_p)) {
      throw DomainError("delta_p must be positive and finite");
    }
    if (!(v0 >= 0.0) || !(v0 < 1.0)) {
      throw DomainError("v0 must lie in [0, 1) in units of c");
    }
    for (double x : p0) {
      if (!std::isfinite(x)) throw DomainError("p0 components must be finite");
    }
    for (double x : r0) {
      if (!std::isfinite(x)) throw DomainError("r0 components must be finite");
    }
    const UnitSystem units(omega_cut, mass0, temperature);
    const double width = 1.5 * units.hbar() / delta_p;
    if (!(width < 1.0)) {
      std::ostringstream msg;
      msg << "packet width 3hbar/(2 delta_p) = " << width
          << " c/Omega violates the dipole condition (must be < 1)";
      throw DomainError(msg.str());
    }
    if (width > 0.1) {
      std::ostringstream msg;
      msg << "packet width " << width << " c/Omega is not small against c/Omega";
      warnings.push_back(msg.str());
    }
    if (temperature > 0.0 && 1.0 / units.theta() > 0.01) {
      std::ostringstream msg;
      msg << "k_B T / hbar Omega = " << 1.0 / units.theta()
          << " exceeds 0.01; the thermal closed form assumes k_B T << hbar Omega";
      warnings.push_back(msg.str());
    }
    if (std::abs(norm(p0) - v0) > 1e-9 * std::max(1.0, v0)) {
      warnings.push_back("v0 differs from |p0|/m0c");
    }
    return warnings;
  }
};

/**
 * Validated parameters together with the derived dimensionless constants.
 *
 * κ = 2α/3π multiplies every decoherence and phase factor, ε = ħΩ/m₀c² is the
 * scaled Planck constant and θ = ħΩ/k_BT encodes the temperature.
 */
class Model {
 public:
  explicit Model(ModelParams p)
      : params_(p),
        units_(p.omega_cut, p.mass0, p.temperature),
        warnings_(p.validate()) {}

  const ModelParams& params() const { return params_; }
  const UnitSystem& units() const { return units_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  double alpha() const { return params_.alpha; }
  double kappa() const { return 2.0 * params_.alpha / (3.0 * constants::pi); }
  double hbar() const { return units_.hbar(); }
  double theta() const { return units_.theta(); }
  bool zero_temperature() const { return params_.temperature == 0.0; }

  /// Ωτ_F = θ/π, +inf at T = 0.
  double thermal_time_scaled() const { return theta() / constants::pi; }

  /// Initial spatial width Δr = 3ε/(2Δp) in c/Ω.
  double delta_r() const { return 1.5 * hbar() / params_.delta_p; }

  ScaledTime scaled(Seconds t) const { return units_.scaled(t); }
  Seconds seconds(ScaledTime s) const { return units_.seconds(s); }

 private:
  ModelParams params_;
  UnitSystem units_;
  std::vector<std::string> warnings_;
};

/// A time stored as ln(Ωτ), usable when τ overflows a double.
struct LogTime {
  double log_scaled = infinity;  // ln(Ωτ); +inf marks a time that never comes
  double omega_cut = 1.0;

  bool is_infinite() const { return std::isinf(log_scaled) && log_scaled > 0; }
  double log_seconds() const { return log_scaled - std::log(omega_cut); }
  /// Linear value; +inf when it does not fit in a double.
  Seconds seconds() const { return {std::exp(log_seconds())}; }
};

struct Timescales {
  Seconds tau_F{infinity};
  Seconds tau_0{infinity};
  Seconds tau_d{infinity};
  LogTime tau_vac;
  Seconds tau_th{infinity};
  std::optional<Seconds> tau_p;
};

/// τ_F = ħ/(πk_BT).
inline Seconds thermal_time(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError(
        "thermal time needs T > 0; T = 0 means the vacuum-only branch, where "
        "there is no thermal time");
  }
  return {constants::hbar / (constants::pi * constants::boltzmann * temperature)};
}

enum class CrossoverEquation {
  /// Γ_vac(t) = Γ_th(t) with the full closed forms: ln√(1+Ω²t²) = ln[sinh x/x].
  exact,
  /// The asymptotic balance ln(Ωt) = t/τ_F.
  leading_order,
};

enum class Root { late, early };

struct TransitionOptions {
  CrossoverEquation equation = CrossoverEquation::exact;
  Root root = Root::late;
};

namespace detail {

/// Bisection in u = ln s on [lo, hi] for f changing sign, f(lo) > 0 > f(hi).
template <class F>
double bisect_log(F f, double lo, double hi) {
  double a = std::log(lo);
  double b = std::log(hi);
  double fa = f(lo);
  const double fb = f(hi);
  if (!(fa > 0.0 && fb < 0.0) && !(fa < 0.0 && fb > 0.0)) {
    throw DomainError("no sign change in bracket");
  }
  for (int i = 0; i < 200 && b - a > 1e-16 * std::max(1.0, std::abs(a)); ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(std::exp(m));
    if (fm == 0.0) return std::exp(m);
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return std::exp(0.5 * (a + b));
}

}  // namespace detail

/// Residual of the crossover equation at s = Ωt, normalized by ln(Ωt) so that
/// it is a relative measure.
inline double transition_residual(double s, double A, CrossoverEquation eq) {
  if (eq == CrossoverEquation::leading_order) {
    return (std::log(s) - s / A) / std::log(s);
  }
  const double lhs = math::log_sqrt1p_sq(s);
  return (lhs - math::log_sinhc(s / A)) / lhs;
}

/**
 * Time at which thermal decoherence overtakes the vacuum contribution.
 *
 * The late root is bracketed in [τ_F, 10⁶τ_F] and found by bisection in
 * ln t. The leading-order equation also has an early root in [Ω⁻¹, eΩ⁻¹]; the
 * exact crossover only touches zero at t = 0, so asking for its early root is
 * a DomainError.
 */
inline Seconds transition_time(double omega_cut, Seconds tau_F,
                               TransitionOptions opts = {}) {
  const double A = omega_cut * tau_F.value;
  if (!(A > std::numbers::e) || !std::isfinite(A)) {
    std::ostringstream msg;
    msg << "no vacuum/thermal crossing: Omega*tau_F = " << A << " must exceed e";
    throw DomainError(msg.str());
  }
  const auto leading = [A](double s) { return std::log(s) - s / A; };
  const auto exact = [A](double s) {
    return math::log_sqrt1p_sq(s) - math::log_sinhc(s / A);
  };
  double s = 0.0;
  try {
    if (opts.root == Root::early) {
      if (opts.equation == CrossoverEquation::exact) {
        throw DomainError("the exact crossover has no early root besides t = 0");
      }
      s = detail::bisect_log(leading, 1.0, std::numbers::e);
    } else if (opts.equation == CrossoverEquation::leading_order) {
      s = detail::bisect_log(leading, A, 1e6 * A);
    } else {
      s = detail::bisect_log(exact, A, 1e6 * A);
    }
  } catch (const DomainError& e) {
    std::ostringstream msg;
    msg << e.what() << " (Omega*tau_F = " << A << ")";
    throw DomainError(msg.str());
  }
  return {s / omega_cut};
}

/// τ_vac = Ω⁻¹ exp[(3π/2α)/Δ²] for a momentum separation Δ (units of m₀c).
inline LogTime vacuum_decoherence_time(const Model& m, double dp) {
  if (!(dp >= 0.0)) throw DomainError("momentum separation must be >= 0");
  LogTime out;
  out.omega_cut = m.params().omega_cut;
  if (dp == 0.0 || m.alpha() == 0.0) return out;
  out.log_scaled = 1.0 / (m.kappa() * dp * dp);
  return out;
}

/// τ_th = τ_F (3π/2α)/Δ².
inline Seconds thermal_decoherence_time(const Model& m, double dp) {
  if (!(dp >= 0.0)) throw DomainError("momentum separation must be >= 0");
  if (dp == 0.0 || m.alpha() == 0.0 || m.zero_temperature()) return {infinity};
  return {thermal_time(m.params().temperature).value / (m.kappa() * dp * dp)};
}

inline Timescales validity_window(const Model& m) {
  const ModelParams& p = m.params();
  Timescales ts;
  ts.tau_0 = {p.v0 > 0.0 ? 1.0 / (p.v0 * p.omega_cut) : infinity};
  ts.tau_d = {1.0 / (p.delta_p * p.omega_cut)};
  ts.tau_vac = vacuum_decoherence_time(m, p.delta_p);
  ts.tau_th = thermal_decoherence_time(m, p.delta_p);
  if (!m.zero_temperature()) {
    ts.tau_F = thermal_time(p.temperature);
    if (p.omega_cut * ts.tau_F.value > std::numbers::e) {
      ts.tau_p = transition_time(p.omega_cut, ts.tau_F);
    }
  }
  return ts;
}

}  // namespace qed
