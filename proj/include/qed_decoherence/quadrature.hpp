#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qed_decoherence/errors.hpp"

/*
 * Adaptive quadrature for integrals of the form
 *
 *     I = ∫₀^∞ f(u) du,   f(u) = a(u) + b(u) cos(su) + c(u) sin(su),
 *
 * where a, b, c are smooth away from u = 0 and decay like e^{−u/L}.
 *
 * The range is truncated at U = N·L and cut into geometric panels near the
 * origin and uniform panels of width L further out. A panel spanning few
 * periods of the oscillation is split at every period and handed to a
 * globally adaptive Gauss–Kronrod (G10/K21) pool that bisects the interval
 * with the largest error until the total meets the tolerance. A panel
 * spanning many periods is instead integrated by Chebyshev interpolation
 * of a, b and c: the smooth part by Clenshaw–Curtis weights and the
 * oscillatory parts by exact integration of polynomial × e^{iωx}.
 */
namespace qed::quad {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 200000;
  /// Truncation point in units of the integrand's decay length.
  double upper_cut = 50.0;
  /// Panels with at most this many periods go to Gauss–Kronrod.
  double direct_periods = 16.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;       // estimated absolute error of value
  double tail_bound = 0.0;  // bound on the discarded ∫_U^∞ |f|
  int panels = 0;           // Gauss–Kronrod intervals plus Chebyshev panels
  int chebyshev_panels = 0;
  long evaluations = 0;
};

struct Parts {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/**
 * Integrand protocol.
 *
 * full(u)       accurate combined value, finite as u → 0
 * parts(u)      the smooth split a, b, c; only called for u well above 0
 * frequency()   s
 * decay_length  L, the e-folding length of the envelope
 * inner_length  the smallest non-oscillatory feature size
 * tail_bound(U) an upper bound on ∫_U^∞ |f|
 */
template <class I>
concept OscillatoryIntegrand = requires(const I& f, double u) {
  { f.full(u) } -> std::convertible_to<double>;
  { f.parts(u) } -> std::convertible_to<Parts>;
  { f.frequency() } -> std::convertible_to<double>;
  { f.decay_length() } -> std::convertible_to<double>;
  { f.inner_length() } -> std::convertible_to<double>;
  { f.tail_bound(u) } -> std::convertible_to<double>;
};

namespace detail {

struct ChebTable {
  int n = 0;
  std::vector<double> x;    // x_j = cos(πj/n), j = 0..n
  std::vector<double> cos;  // cos(πjk/n), row k
};

inline const ChebTable& cheb_table(int n) {
  static const auto tables = [] {
    std::vector<ChebTable> out;
    for (int deg : {16, 32, 64, 128}) {
      ChebTable t;
      t.n = deg;
      t.x.resize(deg + 1);
      t.cos.resize((deg + 1) * (deg + 1));
      for (int j = 0; j <= deg; ++j) {
        t.x[j] = std::cos(std::numbers::pi * j / deg);
      }
      for (int k = 0; k <= deg; ++k) {
        for (int j = 0; j <= deg; ++j) {
          t.cos[k * (deg + 1) + j] = std::cos(std::numbers::pi * ((j * k) % (2 * deg)) / deg);
        }
      }
      out.push_back(std::move(t));
    }
    return out;
  }();
  for (const auto& t : tables) {
    if (t.n == n) return t;
  }
  throw Error("unsupported Chebyshev degree");
}

/// Chebyshev coefficients of the interpolant through values at x_j.
inline std::vector<double> cheb_coeffs(const std::vector<double>& f,
                                       const ChebTable& t) {
  const int n = t.n;
  std::vector<double> c(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double* row = &t.cos[k * (n + 1)];
    double sum = 0.5 * (f[0] * row[0] + f[n] * row[n]);
    for (int j = 1; j < n; ++j) sum += f[j] * row[j];
    c[k] = 2.0 * sum / n;
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return c;
}

/// ∫₋₁¹ p(x) dx for p = Σ c_k T_k.
inline double cheb_integral(const std::vector<double>& c) {
  double sum = 0.0;
  for (std::size_t k = 0; k < c.size(); k += 2) {
    sum += c[k] * 2.0 / (1.0 - static_cast<double>(k * k));
  }
  return sum;
}

/// Coefficients of p′ from those of p.
inline std::vector<double> cheb_derivative(const std::vector<double>& c) {
  const std::size_t n = c.size() - 1;
  if (n == 0) return {0.0};
  std::vector<double> d(n + 1, 0.0);
  for (std::size_t k = n; k >= 1; --k) {
    const double next = k + 1 <= n ? d[k + 1] : 0.0;
    d[k - 1] = next + 2.0 * static_cast<double>(k) * c[k];
  }
  d[0] *= 0.5;
  d.pop_back();
  return d;
}

/// ∫₋₁¹ p(x) e^{iωx} dx by repeated integration by parts, exact for a
/// polynomial. Accurate when ω is at least of order deg²/4.
inline std::complex<double> cheb_fourier(std::vector<double> c, double omega) {
  const std::complex<double> iw{0.0, omega};
  const std::complex<double> ep = std::polar(1.0, omega);
  const std::complex<double> em = std::conj(ep);
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> factor = 1.0 / iw;  // (−1)^k / (iω)^{k+1}
  const std::size_t deg = c.size() - 1;
  for (std::size_t k = 0; k <= deg; ++k) {
    double at_plus = 0.0;
    double at_minus = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      at_plus += c[j];
      at_minus += (j % 2 == 0) ? c[j] : -c[j];
    }
    sum += factor * (at_plus * ep - at_minus * em);
    if (c.size() == 1) break;
    c = cheb_derivative(c);
    factor *= -1.0 / iw;
  }
  return sum;
}

struct Interval {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

/// 21-point Gauss–Kronrod on [a, b]. The error is |K − G| with a rounding
/// floor proportional to the interval's L1 norm.
template <class F>
Interval gauss_kronrod(const F& f, double a, double b, long& evals) {
  using rule = boost::math::quadrature::gauss_kronrod<double, 21>;
  static const auto& x = rule::abscissa();
  static const auto& wk = rule::weights();
  static const auto& wg = boost::math::quadrature::gauss<double, 10>::weights();
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  const double f0 = f(c);
  double k = wk[0] * f0;
  double g = 0.0;
  double l1 = wk[0] * std::abs(f0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fm = f(c - h * x[i]);
    const double fp = f(c + h * x[i]);
    k += wk[i] * (fm + fp);
    l1 += wk[i] * (std::abs(fm) + std::abs(fp));
    // The ten-point Gauss nodes sit at the odd Kronrod indices.
    if (i % 2 == 1) g += wg[i / 2] * (fm + fp);
  }
  evals += 21;
  const double err = std::max(std::abs(h * (k - g)),
                              50.0 * std::numeric_limits<double>::epsilon() * h * l1);
  return {a, b, h * k, err};
}

}  // namespace detail

/**
 * Integrates an oscillatory integrand over [0, ∞).
 *
 * Throws ConvergenceError when the subdivision budget is exhausted or the
 * truncation tail exceeds the requested tolerance; the message carries the
 * reached estimate and error.
 */
template <OscillatoryIntegrand I>
QuadratureResult integrate(const I& f, const QuadratureSpec& spec = {}) {
  const double s = std::abs(f.frequency());
  const double L = f.decay_length();
  const double U = spec.upper_cut * L;
  const double two_pi = 2.0 * std::numbers::pi;
  const double period = s > 0.0 ? two_pi / s : std::numeric_limits<double>::infinity();
  const double inner = std::min({f.inner_length(), L, period});

  QuadratureResult res;
  res.tail_bound = f.tail_bound(U);

  // Breakpoints: 0, geometric up to L, then uniform steps of L up to U.
  std::vector<double> pts{0.0};
  for (double x = inner / 64.0; x < L; x *= 2.0) pts.push_back(x);
  const int steps = static_cast<int>(std::ceil(spec.upper_cut - 1e-9));
  for (int k = 1; k <= steps; ++k) pts.push_back(std::min(U, k * L));

  const auto full = [&f](double u) { return static_cast<double>(f.full(u)); };
  std::priority_queue<detail::Interval> pool;
  double gk_value = 0.0;
  double gk_error = 0.0;
  double cheb_value = 0.0;
  double cheb_error = 0.0;

  const auto push_direct = [&](double a, double b) {
    const double periods = s * (b - a) / two_pi;
    const int pieces = std::max(1, static_cast<int>(std::ceil(periods)));
    for (int i = 0; i < pieces; ++i) {
      const double lo = a + (b - a) * i / pieces;
      const double hi = i + 1 == pieces ? b : a + (b - a) * (i + 1) / pieces;
      detail::Interval iv = detail::gauss_kronrod(full, lo, hi, res.evaluations);
      gk_value += iv.value;
      gk_error += iv.error;
      pool.push(iv);
    }
  };

  // Chebyshev panel; falls back to Gauss–Kronrod when ω is too small for
  // the degree the envelope needs.
  const auto chebyshev_panel = [&](auto&& self, double a, double b, int depth) -> void {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double omega = s * h;
    bool tried = false;
    for (int n : {16, 32, 64, 128}) {
      if (n * n > 4.0 * omega) break;
      tried = true;
      const detail::ChebTable& t = detail::cheb_table(n);
      std::vector<double> fa(n + 1);
      std::vector<double> fb(n + 1);
      std::vector<double> fc(n + 1);
      double scale = 0.0;
      for (int j = 0; j <= n; ++j) {
        const Parts p = f.parts(mid + h * t.x[j]);
        fa[j] = p.a;
        fb[j] = p.b;
        fc[j] = p.c;
        scale = std::max(scale, std::abs(p.a) + std::abs(p.b) + std::abs(p.c));
      }
      res.evaluations += n + 1;
      const auto ca = detail::cheb_coeffs(fa, t);
      const auto cb = detail::cheb_coeffs(fb, t);
      const auto cc = detail::cheb_coeffs(fc, t);
      const auto tail = [n](const std::vector<double>& c) {
        return std::abs(c[n - 1]) + std::abs(c[n]);
      };
      const double err = 4.0 * h * (tail(ca) + tail(cb) + tail(cc));
      const double tol = std::max(0.05 * spec.rel_tol * 2.0 * h * scale,
                                  std::numeric_limits<double>::min());
      if (err <= tol) {
        const std::complex<double> phase = std::polar(1.0, s * mid);
        double v = detail::cheb_integral(ca);
        v += (phase * detail::cheb_fourier(cb, omega)).real();
        v += (phase * detail::cheb_fourier(cc, omega)).imag();
        cheb_value += h * v;
        cheb_error += err;
        ++res.chebyshev_panels;
        return;
      }
    }
    if (tried && depth < 16) {
      self(self, a, mid, depth + 1);
      self(self, mid, b, depth + 1);
      return;
    }
    push_direct(a, b);
  };

  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    if (!(b > a)) continue;
    if (s * (b - a) / two_pi <= spec.direct_periods || a == 0.0) {
      push_direct(a, b);
    } else {
      chebyshev_panel(chebyshev_panel, a, b, 0);
    }
  }

  int subdivisions = 0;
  const auto target = [&] {
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(gk_value + cheb_value));
  };
  while (gk_error + cheb_error > target()) {
    if (pool.empty() || subdivisions >= spec.max_subdivisions ||
        cheb_error > target()) {
      std::ostringstream msg;
      msg << "quadrature did not converge: estimate " << gk_value + cheb_value
          << ", error " << gk_error + cheb_error << ", target " << target()
          << ", subdivisions " << subdivisions;
      throw ConvergenceError(msg.str());
    }
    const detail::Interval worst = pool.top();
    pool.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      std::ostringstream msg;
      msg << "quadrature interval [" << worst.a << ", " << worst.b
          << "] collapsed below rounding with error " << worst.error;
      throw ConvergenceError(msg.str());
    }
    const detail::Interval left = detail::gauss_kronrod(full, worst.a, mid, res.evaluations);
    const detail::Interval right = detail::gauss_kronrod(full, mid, worst.b, res.evaluations);
    gk_value += left.value + right.value - worst.value;
    gk_error += left.error + right.error - worst.error;
    pool.push(left);
    pool.push(right);
    ++subdivisions;
  }

  // Recompute the Gauss–Kronrod sum from the pool to shed accumulated
  // rounding from the running updates; order is fixed by the heap contents.
  std::vector<detail::Interval> final_pool;
  final_pool.reserve(pool.size());
  while (!pool.empty()) {
    final_pool.push_back(pool.top());
    pool.pop();
  }
  std::sort(final_pool.begin(), final_pool.end(),
            [](const detail::Interval& x, const detail::Interval& y) { return x.a < y.a; });
  gk_value = 0.0;
  gk_error = 0.0;
  for (const auto& iv : final_pool) {
    gk_value += iv.value;
    gk_error += iv.error;
  }

  res.value = gk_value + cheb_value;
  res.error = gk_error + cheb_error;
  res.panels = static_cast<int>(final_pool.size()) + res.chebyshev_panels;
  if (res.tail_bound > std::max(spec.abs_tol, spec.rel_tol * std::abs(res.value))) {
    std::ostringstream msg;
    msg << "truncation tail bound " << res.tail_bound
        << " exceeds the tolerance; raise upper_cut";
    throw ConvergenceError(msg.str());
  }
  return res;
}

}  // namespace qed::quad
