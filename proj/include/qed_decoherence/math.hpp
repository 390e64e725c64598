#pragma once

#include <cmath>

// Overflow- and cancellation-safe scalar kernels shared by the closed forms.
namespace qed::math {

/// ln √(1 + s²) for s ≥ 0, exact to rounding for small s and finite for
/// arbitrarily large s.
inline double log_sqrt1p_sq(double s) {
  s = std::abs(s);
  if (s < 1e150) return 0.5 * std::log1p(s * s);
  return std::log(s) + 0.5 * std::log1p(1.0 / (s * s));
}

/// ln[sinh(x)/x] for x ≥ 0.
///
/// Series below 1e-3, asymptotic form x − ln 2x + ln(1 − e^{−2x}) above 20.
inline double log_sinhc(double x) {
  x = std::abs(x);
  if (x < 1e-3) {
    const double x2 = x * x;
    return x2 / 6.0 - x2 * x2 / 180.0 + x2 * x2 * x2 / 2835.0;
  }
  if (x > 20.0) return x - std::log(2.0 * x) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x) / x);
}

/// s − arctan s, with the alternating series below |s| = 0.1 where the
/// direct difference cancels.
inline double s_minus_atan(double s) {
  if (std::abs(s) >= 0.1) return s - std::atan(s);
  const double s2 = s * s;
  double term = s * s2;  // s^{2k+1}
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double add = sign * term / (2.0 * k + 1.0);
    sum += add;
    if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
    term *= s2;
    sign = -sign;
  }
  return sum;
}

/// s²/(1 + s²), finite for all s.
inline double saturation(double s) {
  const double a = std::abs(s);
  if (a > 1e150) return 1.0;
  return s * s / (1.0 + s * s);
}

}  // namespace qed::math
