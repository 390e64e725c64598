// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qed_decoherence.hpp"
#include "qed_decoherence/cli/commands.hpp"

using namespace qed;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  out.back() = hi;
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

template <class F>
double derivative(F f, double s, double h) {
  return (-f(s + 2 * h) + 8 * f(s + h) - 8 * f(s - h) + f(s - 2 * h)) / (12 * h);
}

double trace_p(const GaussianPacket<1>& pk, const DecoherenceFactors& f) {
  const int n = 4001;
  const double lo = pk.p0()[0] - 8.0 * pk.delta_p();
  const double h = 16.0 * pk.delta_p() / (n - 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = lo + h * i;
    sum += ((i == 0 || i == n - 1) ? 0.5 : 1.0) * h * rho_p<1>({p}, {p}, f, pk).value.real();
  }
  return sum;
}

double trace_r(const GaussianPacket<1>& pk, const DecoherenceFactors& f) {
  const double w = position_shape(pk, f).delta_r_t;
  const double centre = -2.0 * pk.p0()[0] * f.phi * pk.hbar();
  const int n = 4001;
  const double lo = centre - 10.0 * w;
  const double h = 20.0 * w / (n - 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double q = lo + h * i;
    sum += ((i == 0 || i == n - 1) ? 0.5 : 1.0) * h * rho_r<1>({q}, {q}, f, pk).value.real();
  }
  return sum;
}

double three_vacuum_times(const Model& m) {
  return 3.0 * std::exp(vacuum_decoherence_time(m, m.params().delta_p).log_scaled);
}

// 1. Vacuum factor against its frequency integral.
void vacuum_integral(Outcome& o) {
  const auto start = Clock::now();
  double worst = 0.0;
  for (double s : log_grid(1e-3, 1e6, 25)) {
    worst = std::max(worst, rel(oracle::quad_gamma_vac(ScaledTime{s}).value,
                                math::log_sqrt1p_sq(s)));
  }
  const double elapsed = seconds_since(start);
  o.detail << "max rel err " << worst << ", " << elapsed << " s";
  o.require(worst <= 1e-8, "rel err > 1e-8");
  o.require(elapsed < 5.0, "runtime >= 5 s");
}

// 2. Interaction phase against its frequency integral.
void phase_integral(Outcome& o) {
  const auto start = Clock::now();
  double worst = 0.0;
  for (double s : log_grid(1e-3, 1e6, 25)) {
    worst = std::max(worst, rel(oracle::quad_phase(ScaledTime{s}).value, math::s_minus_atan(s)));
  }
  const double elapsed = seconds_since(start);
  o.detail << "max rel err " << worst << ", " << elapsed << " s";
  o.require(worst <= 1e-8, "rel err > 1e-8");
  o.require(elapsed < 5.0, "runtime >= 5 s");
}

// 3. Thermal closed form against the full Bose-factor integral at theta = 1e4.
void thermal_integral(Outcome& o) {
  const double theta = 1e4;
  double worst = 0.0;
  for (double x : log_grid(1e-2, 1e3, 25)) {
    const double s = x * theta / std::numbers::pi;
    worst = std::max(worst, rel(oracle::quad_gamma_th(ScaledTime{s}, theta).value,
                                math::log_sinhc(x)));
  }
  o.detail << "max rel err " << worst;
  o.require(worst <= 1e-3, "rel err > 1e-3");
}

// 4. Photon number equals twice the vacuum exponent times p^2.
void photon_number(Outcome& o) {
  const Model m{ModelParams{}};
  double worst = 0.0;
  for (double s : log_grid(1e-3, 1e6, 25)) {
    for (double pb : {1e-3, 0.01, 0.2}) {
      const ScaledTime t{s};
      worst = std::max(worst, rel(mean_photon_number(m, pb, t),
                                  2.0 * gamma_vac_factor(m, t) * pb * pb));
    }
  }
  // The mode-resolved sum is an independent route to the same number.
  double mode_worst = 0.0;
  const Vec3 p_bar{0.006, 0.008, 0.0};
  for (double s : {1e-2, 1.0, 1e2, 1e4}) {
    const ScaledTime t{s};
    mode_worst = std::max(mode_worst, rel(oracle::mode_sum(m, p_bar, t, 0.0).value,
                                          mean_photon_number(m, norm(p_bar), t)));
  }
  o.detail << "identity rel err " << worst << ", mode sum rel err " << mode_worst;
  o.require(worst <= 1e-12, "identity > 1e-12");
  o.require(mode_worst <= 1e-8, "mode sum > 1e-8");
}

// 5. Field energy equals kinetic energy times the field mass shift.
void field_energy(Outcome& o) {
  const Model m{ModelParams{}};
  const double pb = 0.01;
  double identity = 0.0;
  double integral = 0.0;
  for (double s : log_grid(1e-3, 1e6, 25)) {
    const ScaledTime t{s};
    const double e = mean_field_energy(m, pb, t);
    identity = std::max(identity, rel(e, -(pb * pb / 2.0) * field_mass_shift(m, t)));
    const double q = oracle::quad_field_energy(t).value;
    integral = std::max(integral, rel(2.0 * m.kappa() * m.hbar() * pb * pb * q, e));
  }
  o.detail << "identity rel err " << identity << ", integral rel err " << integral;
  o.require(identity <= 1e-12, "identity > 1e-12");
  o.require(integral <= 1e-8, "integral > 1e-8");
}

// 6. Position matrix against the numerical transform of the momentum matrix.
void fourier_transform(Outcome& o) {
  const auto start = Clock::now();
  const Model m(cli::fourier_preset(ModelParams{}));
  const GaussianPacket<1> pk = GaussianPacket<1>::from_model(m);
  double worst = 0.0;
  double doubling = 0.0;
  for (double s : {0.0, three_vacuum_times(m)}) {
    const DecoherenceFactors f = factors_at(m, ScaledTime{s});
    const std::vector<double> q = oracle::packet_q_grid(pk, f);
    const oracle::FourierCheck fc = oracle::fourier_rho_r_checked(pk, f, q, 1e-7);
    const Eigen::MatrixXcd closed = rho_r_grid(q, q, f, pk);
    const double peak = closed.cwiseAbs().maxCoeff();
    worst = std::max(worst, (closed - fc.matrix).cwiseAbs().maxCoeff() / peak);
    doubling = std::max(doubling, fc.doubling_change);
  }
  const double elapsed = seconds_since(start);
  o.detail << "max dev/peak " << worst << ", doubling change " << doubling << ", " << elapsed
           << " s";
  o.require(worst <= 1e-6, "deviation > 1e-6 peak");
  o.require(doubling <= 1e-7, "doubling change > 1e-7");
  o.require(elapsed < 60.0, "runtime >= 60 s");
}

// 7. Thermal time and vacuum/thermal crossover at 1 K.
void timescales(Outcome& o) {
  const ModelParams p;
  const Seconds tau_f = thermal_time(1.0);
  const Seconds tau_p = transition_time(p.omega_cut, tau_f);
  const double residual = std::abs(transition_residual(
      tau_p.value * p.omega_cut, tau_f.value * p.omega_cut, CrossoverEquation::exact));
  o.detail << "tau_F " << tau_f.value << " s, tau_p " << tau_p.value << " s, residual "
           << residual;
  o.require(std::abs(tau_f.value / 2.43e-12 - 1.0) <= 0.01, "tau_F off by > 1%");
  o.require(tau_p.value >= 0.5e-10 && tau_p.value <= 2e-10, "tau_p outside [0.5, 2]e-10 s");
  o.require(residual <= 1e-10, "residual > 1e-10");
}

// 8. Structural identities of the density matrix and observables.
void identities(Outcome& o) {
  double worst = 0.0;
  const auto track = [&](double err) { worst = std::max(worst, err); };
  for (double alpha : {constants::fine_structure, 1.0, 100.0}) {
    ModelParams p;
    p.alpha = alpha;
    const Model m(p);
    const GaussianPacket<1> pk = GaussianPacket<1>::from_model(m);
    std::vector<double> times = log_grid(1e-3, 1e3 * m.thermal_time_scaled(), 40);
    times.insert(times.begin(), 0.0);
    for (double s : times) {
      const ScaledTime t{s};
      const DecoherenceFactors f = factors_at(m, t);
      const double sl = linear_entropy(m, t);
      track(std::abs(sl - (1.0 - momentum_coherence_length(m, t) / momentum_width(m, t))));
      track(std::abs(sl - (1.0 - spatial_coherence_length(m, t) / spatial_width(m, t))));
      const PositionShape shape = position_shape(pk, f);
      track(rel(shape.delta_r_t * shape.delta_r_t, 3.0 * pk.d() * pk.d() * shape.z));
      track(rel(spatial_width(m, t), shape.delta_r_t));
      for (double k : {-1.0, 0.0, 0.5}) {
        const double pv = pk.p0()[0] + k * pk.delta_p();
        const complex now = rho_p<1>({pv}, {pv}, f, pk).value;
        const complex then = rho_p_initial<1>({pv}, {pv}, pk).value;
        track(std::abs(now - then) / std::abs(then));
      }
      const double a = pk.p0()[0] + 0.3 * pk.delta_p();
      const double b = pk.p0()[0] - 0.8 * pk.delta_p();
      const complex pab = rho_p<1>({a}, {b}, f, pk).value;
      const complex pba = rho_p<1>({b}, {a}, f, pk).value;
      if (std::abs(pab) > 0.0) track(std::abs(pab - std::conj(pba)) / std::abs(pab));
      const double w = shape.delta_r_t;
      const double c = -2.0 * pk.p0()[0] * f.phi * pk.hbar();
      const complex rab = rho_r<1>({c + 0.3 * w}, {c - 0.7 * w}, f, pk).value;
      const complex rba = rho_r<1>({c - 0.7 * w}, {c + 0.3 * w}, f, pk).value;
      if (std::abs(rab) > 0.0) track(std::abs(rab - std::conj(rba)) / std::abs(rab));
    }
  }
  ModelParams free;
  free.alpha = 0.0;
  const Model m0(free);
  double free_worst = 0.0;
  for (double s : log_grid(1e-3, 1e6, 25)) {
    const ScaledTime t{s};
    const DecoherenceFactors f = factors_at(m0, t);
    free_worst = std::max(free_worst, std::abs(f.gamma));
    free_worst = std::max(free_worst, rel(f.phi, -s / (2.0 * m0.hbar())));
    free_worst = std::max(free_worst, std::abs(linear_entropy(m0, t)));
    free_worst = std::max(free_worst, rel(spatial_width(m0, t), spatial_width_free(m0, t)));
    free_worst = std::max(free_worst, std::abs(mass_shift(m0, t)));
  }
  o.detail << "max identity err " << worst << ", alpha = 0 err " << free_worst;
  o.require(worst <= 1e-12, "identity > 1e-12");
  o.require(free_worst <= 1e-12, "free limit > 1e-12");
}

// 9. Regime branches inside their guard bands and the small-time expansion.
void regimes(Outcome& o) {
  double worst = 0.0;
  int checked = 0;
  for (double T : {1.0, 300.0}) {
    ModelParams p;
    p.temperature = T;
    const Model m(p);
    for (double s : log_grid(1e-6, 1e8 * m.thermal_time_scaled(), 400)) {
      const ScaledTime t{s};
      for (Regime r : {Regime::early, Regime::intermediate, Regime::late}) {
        if (!in_regime(m, t, r)) continue;
        worst = std::max(worst, rel(gamma_regime_approx(m, t, r), gamma_regime_target(m, t, r)));
        ++checked;
      }
      for (PhaseRegime r : {PhaseRegime::early, PhaseRegime::late}) {
        if (!in_regime(t, r)) continue;
        worst = std::max(worst,
                         rel(phase_interaction_regime_approx(m, t, r), phase_interaction(m, t)));
        ++checked;
      }
    }
  }
  ModelParams p;
  p.alpha = 1.0;
  const Model m(p);
  double quad_worst = 0.0;
  for (double s : log_grid(1e-4, 0.1, 40)) {
    const ScaledTime t{s};
    if (decoherence_function(m, 0.5, t) >= 0.01) continue;
    quad_worst = std::max(quad_worst, rel(coherence_ratio_approx(m, 0.5, t, Regime::early),
                                          coherence_ratio(m, 0.5, t)));
  }
  o.detail << "branches " << checked << " points, max rel err " << worst
           << ", quadratic expansion err " << quad_worst;
  o.require(worst <= 0.02, "branch > 2%");
  o.require(quad_worst <= 0.01, "quadratic expansion > 1%");
}

// 10. Velocity and acceleration as derivatives; radiated power scaling.
void derivatives(Outcome& o) {
  ModelParams p;
  p.alpha = 1.0;
  const Model m(p);
  double worst = 0.0;
  for (double s : log_grid(1e-3, 1e3, 25)) {
    const auto q = [&](double x) { return mean_displacement(m, ScaledTime{x})[0]; };
    worst = std::max(worst, rel(derivative(q, s, 1e-2 * s), mean_velocity(m, ScaledTime{s})[0]));
  }
  for (double s : log_grid(1e-3, 1e2, 21)) {
    const auto v = [&](double x) { return mean_velocity(m, ScaledTime{x})[0]; };
    worst = std::max(worst,
                     rel(derivative(v, s, 1e-2 * s), mean_acceleration(m, ScaledTime{s})[0]));
  }
  double brems = 0.0;
  for (double s : {0.1, 1.0, 10.0}) {
    ModelParams a;
    a.alpha = 0.01;
    ModelParams b;
    b.alpha = 0.03;
    brems = std::max(brems, rel(brems_power_estimate(Model{b}, ScaledTime{s}) /
                                    brems_power_estimate(Model{a}, ScaledTime{s}),
                                27.0));
  }
  o.detail << "finite-difference rel err " << worst << ", alpha^3 ratio err " << brems;
  o.require(worst <= 1e-6, "derivative > 1e-6");
  o.require(brems <= 1e-12, "alpha^3 ratio > 1e-12");
}

// 11. Unit trace of both representations.
void traces(Outcome& o) {
  double worst = 0.0;
  for (const ModelParams& p : {cli::fourier_preset(ModelParams{}), ModelParams{}}) {
    const Model m(p);
    const GaussianPacket<1> pk = GaussianPacket<1>::from_model(m);
    std::vector<double> times{0.0, 10.0 * m.thermal_time_scaled()};
    const double s3 = three_vacuum_times(m);
    if (std::isfinite(s3)) times.push_back(s3);
    for (double s : times) {
      const DecoherenceFactors f = factors_at(m, ScaledTime{s});
      worst = std::max(worst, std::abs(trace_p(pk, f) - 1.0));
      worst = std::max(worst, std::abs(trace_r(pk, f) - 1.0));
    }
  }
  o.detail << "max |trace - 1| " << worst;
  o.require(worst <= 1e-8, "trace off by > 1e-8");
}

// 12. The full verification command.
void verify_runtime(Outcome& o) {
  const auto start = Clock::now();
  cli::RunConfig cfg;
  cfg.command = cli::Command::verify;
  std::ostringstream sink;
  const int code = cli::cmd_verify(cfg, sink, sink);
  const double elapsed = seconds_since(start);
  o.detail << "exit " << code << ", " << elapsed << " s";
  o.require(code == 0, "verify failed");
  o.require(elapsed < 120.0, "runtime >= 120 s");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1  vacuum factor vs frequency integral", vacuum_integral},
      {"2  interaction phase vs frequency integral", phase_integral},
      {"3  thermal factor vs Bose-factor integral", thermal_integral},
      {"4  photon number identity", photon_number},
      {"5  field energy identity and integral", field_energy},
      {"6  position matrix vs numerical transform", fourier_transform},
      {"7  thermal time and crossover at 1 K", timescales},
      {"8  density-matrix identities", identities},
      {"9  regime branches and small-time expansion", regimes},
      {"10 derivatives and radiated-power scaling", derivatives},
      {"11 unit traces", traces},
      {"12 verify command under 2 min", verify_runtime},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    o.detail.precision(3);
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
