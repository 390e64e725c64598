#pragma once

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qed_decoherence/cli/commands.hpp"

namespace qed::cli {

enum ExitCode : int { ok = 0, usage = 1, domain = 2, verification = 3, io = 4 };

namespace detail {

inline Vec3 to_vec3(const std::vector<double>& v, const char* name) {
  if (v.size() == 1) return {v[0], 0.0, 0.0};
  if (v.size() == 3) return {v[0], v[1], v[2]};
  throw DomainError(std::string(name) + " takes 1 or 3 components");
}

}  // namespace detail

/**
 * Parses `qed-decoherence <command> [--config FILE] [--key value ...]
 * [--out PATH]` and runs the command.
 *
 * Returns 0 on success, 1 for usage errors, 2 for domain errors, 3 when
 * verification fails and 4 for I/O errors.
 */
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Decoherence of a free charged wave packet coupled to the EM field"};
  app.name("qed-decoherence");
  app.set_config("--config", "", "key = value file with the physical parameters");
  app.require_subcommand(1);

  RunConfig cfg;
  ModelParams& p = cfg.params;
  std::vector<double> p0{p.p0[0], p.p0[1], p.p0[2]};
  std::vector<double> r0{p.r0[0], p.r0[1], p.r0[2]};

  std::vector<CLI::Option*> keyed;
  keyed.push_back(app.add_option("--alpha", p.alpha, "coupling constant"));
  keyed.push_back(app.add_option("--omega_cut_rad_s", p.omega_cut, "cutoff frequency (rad/s)"));
  keyed.push_back(app.add_option("--temperature_K", p.temperature, "temperature (K)"));
  keyed.push_back(app.add_option("--mass0_kg", p.mass0, "bare mass (kg)"));
  keyed.push_back(app.add_option("--p0_over_m0c", p0, "mean momentum, 1 or 3 components")
                      ->expected(1, 3));
  keyed.push_back(app.add_option("--delta_p_over_m0c", p.delta_p, "momentum spread"));
  keyed.push_back(app.add_option("--v0_over_c", p.v0, "dipole-point speed"));
  keyed.push_back(app.add_option("--r0_over_c_omega", r0, "initial centre, 1 or 3 components")
                      ->expected(1, 3));

  auto* t_min = app.add_option("--t-min", cfg.grid.lo, "first grid time (units of 1/Omega)");
  auto* t_max = app.add_option("--t-max", cfg.grid.hi, "last grid time (units of 1/Omega)");
  auto* t_count = app.add_option("--t-count", cfg.grid.count, "number of grid times");
  bool linear = false;
  auto* t_linear = app.add_flag("--t-linear", linear, "linear instead of log spacing");
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--precision", cfg.precision, "significant figures in CSV output");

  auto* scan = app.add_subcommand("scan", "time series of all observables");
  auto* figure = app.add_subcommand("figure", "data grid behind a figure");
  figure->add_option("which", cfg.figure, "fig1, fig2, fig3 or fig4")->required();
  figure->add_flag("--plot-script", cfg.plot_script, "also write OUT.py plotting the CSV");
  figure->add_option("--points", cfg.rho_points, "fig3 grid points per axis");
  auto* timescales = app.add_subcommand("timescales", "characteristic times");
  auto* verify = app.add_subcommand("verify", "closed forms against the numerical oracles");
  std::vector<std::string> perturb;
  verify->add_option("--perturb", perturb, "NAME=REL: inject a relative error into a closed form");
  auto* rho = app.add_subcommand("rho", "1-D density matrix on a grid");
  std::string rep = "momentum";
  rho->add_option("--rep", rep, "momentum or position")
      ->check(CLI::IsMember({"momentum", "position"}));
  rho->add_option("--t-omega", cfg.rho_t, "time in units of 1/Omega");
  rho->add_option("--points", cfg.rho_points, "grid points per axis");
  for (auto* sub : {scan, figure, timescales, verify, rho}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::usage;
  }

  try {
    p.p0 = detail::to_vec3(p0, "p0_over_m0c");
    p.r0 = detail::to_vec3(r0, "r0_over_c_omega");
    cfg.grid.log = !linear;
    for (auto* o : keyed) {
      if (o->count() > 0) cfg.explicit_keys.insert(o->get_name().substr(2));
    }
    if (t_min->count() || t_max->count() || t_count->count() || t_linear->count()) {
      cfg.explicit_keys.insert("t_grid");
    }
    for (const auto& item : perturb) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw DomainError("--perturb expects NAME=REL, got '" + item + "'");
      }
      std::size_t used = 0;
      const std::string num = item.substr(eq + 1);
      double value = 0.0;
      try {
        value = std::stod(num, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != num.size()) {
        throw DomainError("--perturb value is not a number: '" + item + "'");
      }
      cfg.perturb[item.substr(0, eq)] = value;
    }
    cfg.rho_rep = rep == "position" ? Representation::position : Representation::momentum;

    if (*scan) {
      cfg.command = Command::scan;
      cmd_scan(cfg, out, err);
    } else if (*figure) {
      cfg.command = Command::figure;
      cmd_figure(cfg, out, err);
    } else if (*timescales) {
      cfg.command = Command::timescales;
      cmd_timescales(cfg, out, err);
    } else if (*verify) {
      cfg.command = Command::verify;
      return cmd_verify(cfg, out, err);
    } else if (*rho) {
      cfg.command = Command::rho;
      cmd_rho(cfg, out, err);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::io;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::domain;
  }
  return ExitCode::ok;
}

}  // namespace qed::cli
