#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>

#include <Eigen/Dense>

#include "qed_decoherence/decoherence.hpp"
#include "qed_decoherence/errors.hpp"
#include "qed_decoherence/params.hpp"

namespace qed {

using complex = std::complex<double>;

enum class Representation { momentum, position };

/**
 * Initial minimum-uncertainty Gaussian packet in Dims dimensions.
 *
 * Each Cartesian component carries a momentum spread Δp/√3, so that the total
 * variance over three components is Δp². The spatial width is Δr = 3ε/(2Δp)
 * and the per-component position spread is d = Δr/√3.
 */
template <int Dims>
class GaussianPacket {
  static_assert(Dims == 1 || Dims == 3, "packets are 1-D slices or 3-D");

 public:
  using Vector = std::array<double, Dims>;

  GaussianPacket(Vector p0, double delta_p, Vector r0, double hbar)
      : p0_(p0), r0_(r0), delta_p_(delta_p), hbar_(hbar) {
    if (!(delta_p > 0.0)) throw DomainError("delta_p must be positive");
    if (!(hbar > 0.0)) throw DomainError("scaled hbar must be positive");
  }

  /// The packet described by a model; a 1-D packet takes the x components.
  static GaussianPacket from_model(const Model& m) {
    Vector p0{};
    Vector r0{};
    for (int i = 0; i < Dims; ++i) {
      p0[i] = m.params().p0[i];
      r0[i] = m.params().r0[i];
    }
    return GaussianPacket(p0, m.params().delta_p, r0, m.hbar());
  }

  const Vector& p0() const { return p0_; }
  const Vector& r0() const { return r0_; }
  double delta_p() const { return delta_p_; }
  double hbar() const { return hbar_; }
  double delta_r() const { return 1.5 * hbar_ / delta_p_; }
  double d() const { return delta_r() / std::numbers::sqrt3; }

  /// Per-component normalization √3/(√(2π)Δp).
  double normalization_1d() const {
    return std::numbers::sqrt3 / (std::sqrt(2.0 * std::numbers::pi) * delta_p_);
  }
  double normalization() const { return std::pow(normalization_1d(), Dims); }

 private:
  Vector p0_;
  Vector r0_;
  double delta_p_;
  double hbar_;
};

template <int Dims>
struct ComplexMatrixElement {
  using Vector = std::array<double, Dims>;
  complex value;
  Representation rep = Representation::momentum;
  Vector arg{};
  Vector arg_prime{};
  double t = 0.0;
};

/**
 * Width parameters of the position-space matrix at one instant.
 *
 * Z = 1 + 2Γε²/d² + Φ²ε⁴/d⁴ and Δr(t)² = 3d²Z.
 */
struct PositionShape {
  double z = 1.0;
  double delta_r_t = 0.0;
};

template <int Dims>
PositionShape position_shape(const GaussianPacket<Dims>& pk,
                             const DecoherenceFactors& f) {
  const double e2 = pk.hbar() * pk.hbar();
  const double d2 = pk.d() * pk.d();
  PositionShape s;
  s.z = 1.0 + 2.0 * f.gamma * e2 / d2 + f.phi * f.phi * e2 * e2 / (d2 * d2);
  s.delta_r_t = std::sqrt(3.0 * d2 * s.z);
  return s;
}

namespace detail {

// Log of one Cartesian factor of ρ_p, without the normalization.
inline complex log_rho_p_1d(double p, double pp, double p0, double r0,
                            double delta_p, double hbar, double gamma,
                            double phi) {
  const double a = p - p0;
  const double b = pp - p0;
  const double dp = p - pp;
  const double re = -3.0 * (a * a + b * b) / (4.0 * delta_p * delta_p) -
                    gamma * dp * dp;
  const double im = -r0 * dp / hbar + phi * (p * p - pp * pp);
  return {re, im};
}

// Log of one Cartesian factor of ρ_r, without the prefactor N₁Δp/Δr(t).
inline complex log_rho_r_1d(double x, double xp, double p0, double hbar,
                            double d2, double z, double gamma, double phi) {
  const double e2 = hbar * hbar;
  const double centre = -2.0 * p0 * phi * hbar;
  const double a = x - centre;
  const double b = xp - centre;
  const double dx = x - xp;
  const double re = -(a * a + b * b) / (4.0 * d2 * z) -
                    gamma * e2 * dx * dx / (4.0 * d2 * d2 * z);
  const double im = (1.0 + 2.0 * gamma * e2 / d2) * p0 * dx / (hbar * z) -
                    phi * e2 * (x * x - xp * xp) / (4.0 * d2 * d2 * z);
  return {re, im};
}

}  // namespace detail

/// ρ_p(p, p′, t) = ρ_p(p, p′, 0) exp[−Γ(p−p′)² + iΦ(p² − p′²)].
template <int Dims>
ComplexMatrixElement<Dims> rho_p(const typename GaussianPacket<Dims>::Vector& p,
                                 const typename GaussianPacket<Dims>::Vector& pp,
                                 const DecoherenceFactors& f,
                                 const GaussianPacket<Dims>& pk) {
  complex expo{0.0, 0.0};
  for (int i = 0; i < Dims; ++i) {
    expo += detail::log_rho_p_1d(p[i], pp[i], pk.p0()[i], pk.r0()[i],
                                 pk.delta_p(), pk.hbar(), f.gamma, f.phi);
  }
  return {pk.normalization() * std::exp(expo), Representation::momentum, p, pp,
          f.t};
}

/// ρ_p(p, p′, 0) = N exp{−3[(p−p₀)² + (p′−p₀)²]/4Δp² − i r₀·(p−p′)/ε}.
template <int Dims>
ComplexMatrixElement<Dims> rho_p_initial(
    const typename GaussianPacket<Dims>::Vector& p,
    const typename GaussianPacket<Dims>::Vector& pp,
    const GaussianPacket<Dims>& pk) {
  return rho_p(p, pp, DecoherenceFactors{}, pk);
}

/**
 * Position representation for displacements q = r − r₀ and q′.
 *
 * Each component is a Gaussian of width Δr(t) centred on ⟨q⟩ = −2p₀Φε, with
 * the off-diagonal damping Δp²Γ(q−q′)²/Δr(t)² and phase −Δp²Φ(q²−q′²)/Δr(t)².
 */
template <int Dims>
ComplexMatrixElement<Dims> rho_r(const typename GaussianPacket<Dims>::Vector& q,
                                 const typename GaussianPacket<Dims>::Vector& qp,
                                 const DecoherenceFactors& f,
                                 const GaussianPacket<Dims>& pk) {
  const PositionShape shape = position_shape(pk, f);
  const double d2 = pk.d() * pk.d();
  complex expo{0.0, 0.0};
  for (int i = 0; i < Dims; ++i) {
    expo += detail::log_rho_r_1d(q[i], qp[i], pk.p0()[i], pk.hbar(), d2,
                                 shape.z, f.gamma, f.phi);
  }
  const double pref =
      std::pow(pk.normalization_1d() * pk.delta_p() / shape.delta_r_t, Dims);
  return {pref * std::exp(expo), Representation::position, q, qp, f.t};
}

template <int Dims>
ComplexMatrixElement<Dims> rho_r_initial(
    const typename GaussianPacket<Dims>::Vector& q,
    const typename GaussianPacket<Dims>::Vector& qp,
    const GaussianPacket<Dims>& pk) {
  return rho_r(q, qp, DecoherenceFactors{}, pk);
}

/// ρ_p of a 1-D packet sampled on rows × cols of the given momentum grids.
inline Eigen::MatrixXcd rho_p_grid(std::span<const double> p,
                                   std::span<const double> pp,
                                   const DecoherenceFactors& f,
                                   const GaussianPacket<1>& pk) {
  Eigen::MatrixXcd out(p.size(), pp.size());
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      out(i, j) = rho_p<1>({p[i]}, {pp[j]}, f, pk).value;
    }
  }
  return out;
}

/// ρ_r of a 1-D packet sampled on rows × cols of the given displacement grids.
inline Eigen::MatrixXcd rho_r_grid(std::span<const double> q,
                                   std::span<const double> qp,
                                   const DecoherenceFactors& f,
                                   const GaussianPacket<1>& pk) {
  Eigen::MatrixXcd out(q.size(), qp.size());
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      out(i, j) = rho_r<1>({q[i]}, {qp[j]}, f, pk).value;
    }
  }
  return out;
}

}  // namespace qed
