// Decoherence of an electron packet at 1 K with a cutoff of 1e19 rad/s.

#include <cstdio>

#include "qed_decoherence.hpp"

int main() {
  qed::ModelParams params;  // electron, p0 = 0.01 m0c, delta_p = 0.1 m0c
  const qed::Model model(params);

  const qed::Timescales ts = qed::validity_window(model);
  std::printf("tau_F   = %.4e s\n", ts.tau_F.value);
  std::printf("tau_p   = %.4e s\n", ts.tau_p->value);
  std::printf("ln tau_vac/s = %.4e\n", ts.tau_vac.log_seconds());

  std::printf("\n%12s %12s %12s %12s %12s\n", "t [s]", "Gamma", "l_p", "S_lin", "delta_r");
  for (double t : {1e-21, 1e-19, 1e-17, 1e-15, 1e-13, 1e-11, 1e-9}) {
    const qed::ScaledTime s = model.scaled(qed::Seconds{t});
    const qed::DecoherenceFactors f = qed::factors_at(model, s);
    const qed::ObservableSnapshot o = qed::snapshot(model, s);
    std::printf("%12.3e %12.4e %12.4e %12.4e %12.4e\n", t, f.gamma, o.l_p, o.s_lin, o.delta_r_t);
  }

  // Cross-check the vacuum factor against direct quadrature at one time.
  const qed::ScaledTime s{100.0};
  const auto q = qed::oracle::quad_gamma_vac(s);
  std::printf("\nGamma_vac(100/Omega): closed %.15e, quadrature %.15e\n",
              qed::gamma_vac_factor(model, s), model.kappa() * q.value);
  return 0;
}
