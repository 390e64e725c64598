#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qed_decoherence/decoherence.hpp"
#include "qed_decoherence/densmat.hpp"
#include "qed_decoherence/errors.hpp"
#include "qed_decoherence/field.hpp"
#include "qed_decoherence/observables.hpp"
#include "qed_decoherence/oracle.hpp"
#include "qed_decoherence/params.hpp"

namespace qed::cli {

enum class Command { scan, figure, timescales, verify, rho };

inline std::string to_string(Command c) {
  switch (c) {
    case Command::scan: return "scan";
    case Command::figure: return "figure";
    case Command::timescales: return "timescales";
    case Command::verify: return "verify";
    case Command::rho: return "rho";
  }
  return "?";
}

/// Sample times in units of Ω⁻¹.
struct TimeGrid {
  bool log = true;
  double lo = 1e-3;
  double hi = 1e6;
  int count = 25;

  void validate() const {
    if (count < 2) throw DomainError("time grid needs at least 2 points");
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
      throw DomainError("time grid needs finite bounds with hi > lo");
    }
    if (log ? !(lo > 0.0) : !(lo >= 0.0)) {
      throw DomainError(log ? "log time grid needs lo > 0" : "linear time grid needs lo >= 0");
    }
  }

  std::vector<double> values() const {
    validate();
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / (count - 1);
      out[i] = log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)))
                   : lo + f * (hi - lo);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
  }
};

struct RunConfig {
  ModelParams params;
  Command command = Command::scan;
  TimeGrid grid;
  std::string out;   // empty writes to the given stream
  int precision = 12;

  // Keys given explicitly on the command line or in a config file; figure
  // presets leave these alone.
  std::set<std::string> explicit_keys;

  std::string figure = "fig1";
  bool plot_script = false;

  // Relative errors injected into closed forms by `verify`, keyed by the
  // oracle quantity name.
  std::map<std::string, double> perturb;

  Representation rho_rep = Representation::momentum;
  double rho_t = 0.0;  // Ωt
  int rho_points = 41;

  bool is_explicit(const std::string& key) const { return explicit_keys.count(key) > 0; }

  void validate() const {
    grid.validate();
    if (precision < 1 || precision > 17) throw DomainError("precision must be in [1, 17]");
    if (rho_points < 2) throw DomainError("rho grid needs at least 2 points");
    if (!(rho_t >= 0.0) || !std::isfinite(rho_t)) throw DomainError("rho time must be >= 0");
  }
};

namespace detail {

inline std::string vec_string(const Vec3& v) {
  std::ostringstream s;
  s << std::setprecision(17) << '[' << v[0] << ", " << v[1] << ", " << v[2] << ']';
  return s.str();
}

/// Comma-separated rows in scientific notation with a fixed number of
/// significant figures, preceded by `#` lines with the resolved config.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, int precision) : os_(os) {
    os_ << std::scientific << std::setprecision(precision - 1);
  }

  void comment(const std::string& line) { os_ << "# " << line << '\n'; }

  void config(const RunConfig& cfg, const ModelParams& p) {
    std::ostringstream s;
    s << std::setprecision(17);
    comment("command = " + to_string(cfg.command));
    s << "alpha = " << p.alpha;
    comment(s.str());
    s.str("");
    s << "omega_cut_rad_s = " << p.omega_cut;
    comment(s.str());
    s.str("");
    s << "temperature_K = " << p.temperature;
    comment(s.str());
    s.str("");
    s << "mass0_kg = " << p.mass0;
    comment(s.str());
    s.str("");
    comment("p0_over_m0c = " + vec_string(p.p0));
    s << "delta_p_over_m0c = " << p.delta_p;
    comment(s.str());
    s.str("");
    comment("r0_over_c_omega = " + vec_string(p.r0));
    s << "v0_over_c = " << p.v0;
    comment(s.str());
    s.str("");
    s << "t_grid = " << (cfg.grid.log ? "log" : "linear") << ' ' << cfg.grid.lo << ' '
      << cfg.grid.hi << ' ' << cfg.grid.count;
    comment(s.str());
    s.str("");
    s << "precision = " << cfg.precision;
    comment(s.str());
  }

  void header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) os_ << (i ? "," : "") << names[i];
    os_ << '\n';
  }

  template <class... T>
  void row(const T&... values) {
    bool first = true;
    ((os_ << (first ? "" : ","), write(values), first = false), ...);
    os_ << '\n';
  }

 private:
  void write(double v) { os_ << v; }
  void write(int v) { os_ << v; }
  void write(bool v) { os_ << (v ? 1 : 0); }
  void write(const std::string& v) { os_ << v; }
  void write(const char* v) { os_ << v; }

  std::ostream& os_;
};

/// Opens cfg.out, or hands back the fallback stream when no path is set.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_.open(path, std::ios::out | std::ios::trunc);
    if (!file_) throw IoError("cannot open output file: " + path);
    stream_ = &file_;
  }

  std::ostream& stream() { return *stream_; }

  void close() {
    stream_->flush();
    if (file_.is_open()) {
      file_.close();
      if (file_.fail()) throw IoError("failed writing output file: " + path_);
    } else if (!*stream_) {
      throw IoError("failed writing output stream");
    }
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

inline void report_warnings(const Model& m, std::ostream& log) {
  for (const auto& w : m.warnings()) log << "warning: " << w << '\n';
}

inline double along(const Vec3& v, const Vec3& p0) {
  const double n = norm(p0);
  if (n == 0.0) return v[0];
  return (v[0] * p0[0] + v[1] * p0[1] + v[2] * p0[2]) / n;
}

inline std::vector<double> log_axis(double lo, double hi, int count) {
  return TimeGrid{true, lo, hi, count}.values();
}

}  // namespace detail

/**
 * One row per grid time.
 *
 * Lengths are in c/Ω, momenta in m₀c, velocities in c, energies in m₀c²;
 * mean_q and mean_v are components along p₀ (along x when p₀ = 0).
 */
inline void cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  cfg.validate();
  const Model m(cfg.params);
  detail::report_warnings(m, log);
  const double pb = norm(cfg.params.p0);
  const auto times = cfg.grid.values();

  detail::Sink sink(cfg.out, out);
  detail::CsvWriter csv(sink.stream(), cfg.precision);
  csv.config(cfg, cfg.params);
  csv.comment("units: lengths c/Omega, momenta m0*c, velocities c, energies m0*c^2, "
              "brems_estimate m0*c^2*Omega (scaling estimate)");
  csv.header({"t_s", "t_omega", "gamma_vac", "gamma_th", "gamma", "phi", "delta_p", "l_p",
              "s_lin", "mean_q", "mean_v", "delta_m_over_m0", "delta_r", "delta_r_free", "l_r",
              "n_photons", "e_field", "brems_estimate", "valid"});
  for (double s : times) {
    const ScaledTime t{s};
    const DecoherenceFactors f = factors_at(m, t);
    const ObservableSnapshot o = snapshot(m, t);
    csv.row(m.seconds(t).value, s, f.gamma_vac, f.gamma_th, f.gamma, f.phi, o.delta_p_t, o.l_p,
            o.s_lin, detail::along(o.mean_q, cfg.params.p0),
            detail::along(o.mean_v, cfg.params.p0), o.delta_m, o.delta_r_t, o.delta_r_free,
            o.l_r, mean_photon_number(m, pb, t), mean_field_energy(m, pb, t),
            brems_power_estimate(m, t), within_validity(m, t));
  }
  sink.close();
}

/// Parameters and grids of one figure before user overrides.
struct FigurePreset {
  ModelParams params;
  TimeGrid grid;
  std::vector<double> axis;  // ζ, α or nothing
};

/**
 * Preset defaults: fig1 at 300 K over ζ, fig2 and fig4 over α with
 * |p − p′| = Δp = 0.1 m₀c, fig3 with p₀ = 0 and α = 500 so that τ_vac stays
 * a few Ω⁻¹.
 */
inline FigurePreset figure_preset(const std::string& which, const RunConfig& cfg) {
  FigurePreset f;
  f.params = cfg.params;
  const auto set = [&](const char* key, auto& field, auto value) {
    if (!cfg.is_explicit(key)) field = value;
  };
  if (which == "fig1") {
    set("temperature_K", f.params.temperature, 300.0);
    f.grid = {true, 1e-2, 1e4, 121};
    f.axis = detail::log_axis(1e-4, 1e-1, 7);
  } else if (which == "fig2") {
    set("delta_p_over_m0c", f.params.delta_p, 0.1);
    f.grid = {true, 1e-2, 1e6, 161};
    f.axis = detail::log_axis(1.0, 1e3, 13);
  } else if (which == "fig3") {
    set("alpha", f.params.alpha, 500.0);
    set("delta_p_over_m0c", f.params.delta_p, 0.1);
    set("p0_over_m0c", f.params.p0, Vec3{0.0, 0.0, 0.0});
    set("v0_over_c", f.params.v0, 0.0);
  } else if (which == "fig4") {
    set("delta_p_over_m0c", f.params.delta_p, 0.1);
    f.grid = {true, 1e-2, 1e6, 161};
    f.axis = detail::log_axis(1e-3, 1.0, 13);
  } else {
    throw DomainError("unknown figure '" + which + "' (expected fig1, fig2, fig3 or fig4)");
  }
  if (cfg.is_explicit("t_grid")) f.grid = cfg.grid;
  f.grid.validate();
  return f;
}

/// Python sidecar that plots the CSV next to it; it reads nothing else.
inline std::string plot_script(const std::string& which, const std::string& csv_path) {
  std::string x = "t_omega";
  std::string y = "alpha";
  std::string z;
  std::string facet;
  bool log_xy = true;
  if (which == "fig1") {
    y = "zeta";
    z = "gamma_vac_pp";
    facet = "";
  } else if (which == "fig2") {
    z = "coherence";
  } else if (which == "fig3") {
    x = "p";
    y = "p_prime";
    z = "z";
    facet = "t_label";
    log_xy = false;
  } else {
    z = "s_lin";
  }
  std::ostringstream s;
  s << "import numpy as np\n"
       "import matplotlib.pyplot as plt\n\n"
    << "with open(" << std::quoted(csv_path) << ", encoding=\"utf-8\") as fh:\n"
    << "    lines = [line for line in fh if not line.startswith(\"#\")]\n"
    << "data = np.genfromtxt(lines, delimiter=\",\", names=True, dtype=None, encoding=\"utf-8\")\n"
    << "x, y = " << std::quoted(x) << ", " << std::quoted(y) << "\n"
    << "zs = [" << std::quoted(z) << (which == "fig1" ? ", \"gamma_th_pp\"" : "") << "]\n"
    << "facet = " << std::quoted(facet) << "\n"
    << "groups = sorted(set(data[facet])) if facet else [None]\n"
    << "fig, axes = plt.subplots(len(groups), len(zs), squeeze=False,\n"
    << "                         figsize=(5 * len(zs), 4 * len(groups)))\n"
    << "for i, g in enumerate(groups):\n"
    << "    rows = data if g is None else data[data[facet] == g]\n"
    << "    for j, z in enumerate(zs):\n"
    << "        ax = axes[i][j]\n"
    << "        c = ax.tricontourf(" << (log_xy ? "np.log10(rows[x]), np.log10(rows[y])" : "rows[x], rows[y]")
    << ", rows[z], 40)\n"
    << "        fig.colorbar(c, ax=ax)\n"
    << "        ax.set_xlabel(" << (log_xy ? "\"log10 \" + x" : "x") << ")\n"
    << "        ax.set_ylabel(" << (log_xy ? "\"log10 \" + y" : "y") << ")\n"
    << "        ax.set_title(z if g is None else f\"{z} ({g})\")\n"
    << "fig.tight_layout()\n"
    << "fig.savefig(" << std::quoted(csv_path + ".png") << ", dpi=150)\n";
  return s.str();
}

/**
 * Data grid behind one figure.
 *
 * fig1: Γ_vac and Γ_th times (p − p′)² over (Ωt, ζ). fig2: exp(−Γ_vac(p − p′)²)
 * over (Ωt, α). fig3: |ρ_p|/N₁ of the 1-D packet at t = 0 and 3τ_vac.
 * fig4: S_lin over (Ωt, α).
 */
inline void cmd_figure(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  cfg.validate();
  const FigurePreset preset = figure_preset(cfg.figure, cfg);
  RunConfig shown = cfg;
  shown.grid = preset.grid;
  const Model base(preset.params);
  detail::report_warnings(base, log);

  detail::Sink sink(cfg.out, out);
  detail::CsvWriter csv(sink.stream(), cfg.precision);
  csv.config(shown, preset.params);
  csv.comment("figure = " + cfg.figure);
  const double dp = preset.params.delta_p;

  if (cfg.figure == "fig1") {
    csv.header({"t_s", "t_omega", "zeta", "gamma_vac_pp", "gamma_th_pp"});
    for (double zeta : preset.axis) {
      for (double s : preset.grid.values()) {
        const ScaledTime t{s};
        csv.row(base.seconds(t).value, s, zeta, zeta * math::log_sqrt1p_sq(s),
                base.zero_temperature()
                    ? 0.0
                    : zeta * math::log_sinhc(s / base.thermal_time_scaled()));
      }
    }
  } else if (cfg.figure == "fig2") {
    csv.comment("p_minus_p_prime = delta_p_over_m0c");
    csv.header({"t_omega", "alpha", "coherence"});
    for (double a : preset.axis) {
      ModelParams p = preset.params;
      p.alpha = a;
      const Model m(p);
      for (double s : preset.grid.values()) {
        csv.row(s, a, std::exp(-gamma_vac_factor(m, ScaledTime{s}) * dp * dp));
      }
    }
  } else if (cfg.figure == "fig3") {
    const GaussianPacket<1> pk = GaussianPacket<1>::from_model(base);
    const LogTime tv = vacuum_decoherence_time(base, dp);
    const double s3 = 3.0 * std::exp(tv.log_scaled);
    if (!std::isfinite(s3)) {
      throw DomainError("3 tau_vac overflows at this alpha; raise alpha for fig3");
    }
    csv.comment("z = |rho_p| / N with N = sqrt(3) / (sqrt(2 pi) delta_p)");
    csv.header({"t_label", "t_omega", "p", "p_prime", "z"});
    const int n = cfg.rho_points;
    const double lo = pk.p0()[0] - 4.0 * dp;
    const double h = 8.0 * dp / (n - 1);
    for (const auto& [label, s] : {std::pair{std::string("t0"), 0.0},
                                   std::pair{std::string("3tau_vac"), s3}}) {
      const DecoherenceFactors f = factors_at(base, ScaledTime{s});
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double p = lo + h * i;
          const double pp = lo + h * j;
          csv.row(label, s, p, pp,
                  std::abs(rho_p<1>({p}, {pp}, f, pk).value) / pk.normalization_1d());
        }
      }
    }
  } else {
    csv.header({"t_omega", "alpha", "s_lin"});
    for (double a : preset.axis) {
      ModelParams p = preset.params;
      p.alpha = a;
      const Model m(p);
      for (double s : preset.grid.values()) csv.row(s, a, linear_entropy(m, ScaledTime{s}));
    }
  }
  sink.close();

  if (cfg.plot_script) {
    if (cfg.out.empty()) throw DomainError("--plot-script needs --out for the CSV path");
    const std::string path = cfg.out + ".py";
    std::ofstream py(path);
    if (!py) throw IoError("cannot open plot script: " + path);
    py << plot_script(cfg.figure, cfg.out);
    if (!py) throw IoError("failed writing plot script: " + path);
  }
}

/**
 * Characteristic times. The crossover row uses the exact Γ_vac = Γ_th
 * equation; the leading-order roots follow for comparison.
 */
inline void cmd_timescales(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  cfg.validate();
  const Model m(cfg.params);
  detail::report_warnings(m, log);
  const ModelParams& p = cfg.params;
  const Timescales ts = validity_window(m);

  detail::Sink sink(cfg.out, out);
  detail::CsvWriter csv(sink.stream(), cfg.precision);
  csv.config(cfg, p);
  csv.header({"name", "seconds", "omega_t", "ln_seconds", "note"});
  const auto row = [&](const std::string& name, Seconds t, const std::string& note) {
    csv.row(name, t.value, t.value * p.omega_cut, std::log(t.value), note);
  };
  row("tau_F", ts.tau_F, m.zero_temperature() ? "T = 0" : "hbar/(pi k_B T)");
  row("tau_0", ts.tau_0, "c/(v0 Omega)");
  row("tau_d", ts.tau_d, "m0 c/(delta_p Omega)");
  if (ts.tau_p) {
    row("tau_p", *ts.tau_p, "Gamma_vac = Gamma_th");
    const TransitionOptions late{CrossoverEquation::leading_order, Root::late};
    const TransitionOptions early{CrossoverEquation::leading_order, Root::early};
    row("tau_p_leading_order", transition_time(p.omega_cut, ts.tau_F, late),
        "ln(Omega t) = t/tau_F");
    row("tau_p_leading_order_early", transition_time(p.omega_cut, ts.tau_F, early),
        "ln(Omega t) = t/tau_F");
  } else {
    csv.row("tau_p", infinity, infinity, infinity, "no crossing");
  }
  csv.row("tau_vac", ts.tau_vac.seconds().value,
          std::exp(ts.tau_vac.log_scaled), ts.tau_vac.log_seconds(),
          "separation delta_p; ln column is exact when the linear value overflows");
  row("tau_th", ts.tau_th, "separation delta_p");
  sink.close();
}

/// Parameters the transform check runs with.
inline ModelParams fourier_preset(const ModelParams& base) {
  ModelParams p = base;
  p.alpha = 500.0;
  p.delta_p = 0.1;
  p.p0 = {0.0, 0.0, 0.0};
  p.v0 = 0.0;
  return p;
}

/**
 * Every oracle on the 25-point log grid Ωt ∈ [1e-3, 1e6], the trace checks
 * and the transform oracle at the figure-3 parameters for t ∈ {0, 3τ_vac}.
 * The plain-text table goes to `out`; `cfg.out` receives the CSV report.
 * Returns 0 when all asserted reports pass and 3 otherwise.
 */
inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  cfg.validate();
  for (const auto& [name, rel] : cfg.perturb) {
    const auto& cov = oracle::coverage();
    const bool known = std::any_of(cov.begin(), cov.end(),
                                   [&](const oracle::Coverage& c) { return c.oracle == name; });
    if (!known) throw DomainError("no oracle named '" + name + "' to perturb");
    if (!std::isfinite(rel)) throw DomainError("perturbation must be finite");
  }
  const Model m(cfg.params);
  detail::report_warnings(m, log);
  const std::vector<double> grid = TimeGrid{true, 1e-3, 1e6, 25}.values();

  oracle::RunOptions main_opts;
  main_opts.fourier_times = {};
  main_opts.perturb = cfg.perturb;
  std::vector<oracle::OracleReport> reports = oracle::run_all(cfg.params, grid, main_opts);

  const ModelParams fp = fourier_preset(cfg.params);
  const Model fm(fp);
  const double s3 = 3.0 * std::exp(vacuum_decoherence_time(fm, fp.delta_p).log_scaled);
  oracle::RunOptions f_opts;
  f_opts.fourier_times = {0.0, s3};
  f_opts.perturb = cfg.perturb;
  for (auto& r : oracle::run_all(fp, {s3}, f_opts)) {
    r.quantity = "fig3/" + r.quantity;
    reports.push_back(std::move(r));
  }

  out << std::left << std::setw(30) << "quantity" << std::setw(14) << "t_omega"
      << std::setw(14) << "rel_err" << std::setw(14) << "tolerance" << "result\n";
  std::vector<std::string> failing;
  for (const auto& r : reports) {
    std::ostringstream line;
    line << std::left << std::setw(30) << r.quantity << std::scientific << std::setprecision(4)
         << std::setw(14) << r.t << std::setw(14) << r.rel_err << std::setw(14) << r.tolerance
         << (r.pass ? (r.asserted ? "PASS" : "REPORT") : "FAIL");
    if (!r.note.empty() && !r.pass) line << "  " << r.note;
    out << line.str() << '\n';
    if (r.asserted && !r.pass) {
      std::ostringstream id;
      id << r.quantity << "@" << r.t;
      failing.push_back(id.str());
    }
  }
  const bool ok = failing.empty();
  out << (ok ? "verify: all checks passed" : "verify: FAILED") << " (" << reports.size()
      << " reports)\n";
  for (const auto& f : failing) out << "  failing: " << f << '\n';

  if (!cfg.out.empty()) {
    detail::Sink sink(cfg.out, out);
    detail::CsvWriter csv(sink.stream(), cfg.precision);
    csv.config(cfg, cfg.params);
    csv.header({"quantity", "t_omega", "closed_form", "oracle", "abs_err", "rel_err", "tolerance",
                "asserted", "pass", "error_estimate", "panels", "evaluations"});
    for (const auto& r : reports) {
      csv.row(r.quantity, r.t, r.closed_form, r.oracle, r.abs_err, r.rel_err, r.tolerance,
              r.asserted, r.pass, r.error_estimate, r.panels, static_cast<double>(r.evaluations));
    }
    sink.close();
  }
  return ok ? 0 : 3;
}

/// The 1-D density matrix at Ωt = rho_t on a rho_points² grid spanning four
/// widths either side of the packet centre.
inline void cmd_rho(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  cfg.validate();
  const Model m(cfg.params);
  detail::report_warnings(m, log);
  const GaussianPacket<1> pk = GaussianPacket<1>::from_model(m);
  const DecoherenceFactors f = factors_at(m, ScaledTime{cfg.rho_t});
  const int n = cfg.rho_points;

  std::vector<double> axis(n);
  double centre = pk.p0()[0];
  double half = 4.0 * pk.delta_p();
  if (cfg.rho_rep == Representation::position) {
    centre = -2.0 * pk.p0()[0] * f.phi * pk.hbar();
    half = 4.0 * position_shape(pk, f).delta_r_t;
  }
  for (int i = 0; i < n; ++i) axis[i] = centre - half + 2.0 * half * i / (n - 1);
  const Eigen::MatrixXcd rho = cfg.rho_rep == Representation::momentum
                                   ? rho_p_grid(axis, axis, f, pk)
                                   : rho_r_grid(axis, axis, f, pk);

  detail::Sink sink(cfg.out, out);
  detail::CsvWriter csv(sink.stream(), cfg.precision);
  csv.config(cfg, cfg.params);
  const bool mom = cfg.rho_rep == Representation::momentum;
  csv.comment(std::string("representation = ") + (mom ? "momentum" : "position"));
  std::ostringstream ts;
  ts << std::setprecision(17) << "t_omega = " << cfg.rho_t;
  csv.comment(ts.str());
  csv.header({mom ? "p" : "q", mom ? "p_prime" : "q_prime", "re", "im", "abs"});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const complex v = rho(i, j);
      csv.row(axis[i], axis[j], v.real(), v.imag(), std::abs(v));
    }
  }
  sink.close();
}

}  // namespace qed::cli
