#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "qed_decoherence/densmat.hpp"

using namespace qed;

namespace {

struct Fixture {
  Model model{ModelParams{}};
  GaussianPacket<1> pk = GaussianPacket<1>::from_model(model);
};

std::vector<double> times(const Model& m) {
  const double A = m.thermal_time_scaled();
  return {0.0, 1e-2, 1.0, 1e2, A, 10.0 * A, 1e3 * A};
}

double trapezoid_trace_p(const GaussianPacket<1>& pk, const DecoherenceFactors& f) {
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

double trapezoid_trace_r(const GaussianPacket<1>& pk, const DecoherenceFactors& f) {
  const PositionShape shape = position_shape(pk, f);
  const double centre = -2.0 * pk.p0()[0] * f.phi * pk.hbar();
  const int n = 4001;
  const double lo = centre - 10.0 * shape.delta_r_t;
  const double h = 20.0 * shape.delta_r_t / (n - 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double q = lo + h * i;
    sum += ((i == 0 || i == n - 1) ? 0.5 : 1.0) * h * rho_r<1>({q}, {q}, f, pk).value.real();
  }
  return sum;
}

}  // namespace

TEST(GaussianPacket, WidthsAndNormalization) {
  const GaussianPacket<3> pk({0.01, 0.0, 0.0}, 0.1, {0.0, 0.0, 0.0}, 0.0128);
  EXPECT_DOUBLE_EQ(pk.delta_r() * pk.delta_p(), 1.5 * pk.hbar());
  EXPECT_DOUBLE_EQ(pk.d(), pk.delta_r() / std::numbers::sqrt3);
  EXPECT_NEAR(pk.normalization(), std::pow(pk.normalization_1d(), 3), 1e-12 * pk.normalization());
  EXPECT_THROW(GaussianPacket<1>({0.0}, 0.0, {0.0}, 0.01), DomainError);
}

TEST(RhoP, PeakAtCentreIsNormalization) {
  Fixture fx;
  const auto e = rho_p_initial<1>(fx.pk.p0(), fx.pk.p0(), fx.pk);
  EXPECT_DOUBLE_EQ(e.value.real(), fx.pk.normalization());
  EXPECT_EQ(e.value.imag(), 0.0);
  EXPECT_EQ(e.rep, Representation::momentum);
}

TEST(RhoP, UnitTraceAtAllTimes) {
  Fixture fx;
  for (double s : times(fx.model)) {
    const DecoherenceFactors f = factors_at(fx.model, ScaledTime{s});
    EXPECT_NEAR(trapezoid_trace_p(fx.pk, f), 1.0, 1e-10) << s;
  }
}

TEST(RhoP, ThreeDimensionalTraceFactorizes) {
  const Model m{ModelParams{}};
  const GaussianPacket<3> pk = GaussianPacket<3>::from_model(m);
  const DecoherenceFactors f = factors_at(m, ScaledTime{5.0});
  const int n = 161;
  const double h = 16.0 * pk.delta_p() / (n - 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const std::array<double, 3> p{pk.p0()[0] - 8.0 * pk.delta_p() + h * i,
                                      pk.p0()[1] - 8.0 * pk.delta_p() + h * j,
                                      pk.p0()[2] - 8.0 * pk.delta_p() + h * k};
        const double w = ((i == 0 || i == n - 1) ? 0.5 : 1.0) *
                         ((j == 0 || j == n - 1) ? 0.5 : 1.0) *
                         ((k == 0 || k == n - 1) ? 0.5 : 1.0);
        sum += w * rho_p<3>(p, p, f, pk).value.real();
      }
    }
  }
  EXPECT_NEAR(sum * h * h * h, 1.0, 1e-10);
}

TEST(RhoP, DiagonalIsConstantInTime) {
  Fixture fx;
  for (double p : {-0.2, 0.0, 0.01, 0.13}) {
    const complex ref = rho_p_initial<1>({p}, {p}, fx.pk).value;
    for (double s : times(fx.model)) {
      const DecoherenceFactors f = factors_at(fx.model, ScaledTime{s});
      const complex v = rho_p<1>({p}, {p}, f, fx.pk).value;
      EXPECT_NEAR(std::abs(v - ref), 0.0, 1e-12 * std::abs(ref));
    }
  }
}

TEST(RhoP, HermitianAndBoundedByDiagonals) {
  Fixture fx;
  for (double s : times(fx.model)) {
    const DecoherenceFactors f = factors_at(fx.model, ScaledTime{s});
    for (double p : {-0.1, 0.02, 0.15}) {
      for (double pp : {-0.05, 0.01, 0.2}) {
        const complex a = rho_p<1>({p}, {pp}, f, fx.pk).value;
        const complex b = rho_p<1>({pp}, {p}, f, fx.pk).value;
        EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12 * std::abs(a));
        const double dpp = rho_p<1>({p}, {p}, f, fx.pk).value.real();
        const double dqq = rho_p<1>({pp}, {pp}, f, fx.pk).value.real();
        EXPECT_GT(dpp, 0.0);
        EXPECT_LE(std::norm(a), dpp * dqq * (1.0 + 1e-12));
      }
    }
  }
}

TEST(RhoP, ReducesToInitialAtZero) {
  Fixture fx;
  const DecoherenceFactors f = factors_at(fx.model, ScaledTime{0.0});
  const complex a = rho_p<1>({0.05}, {-0.03}, f, fx.pk).value;
  const complex b = rho_p_initial<1>({0.05}, {-0.03}, fx.pk).value;
  EXPECT_EQ(a, b);
}

TEST(RhoP, OffDiagonalDecaysWithDecoherenceFactor) {
  Fixture fx;
  const ScaledTime t{1e4 * fx.model.thermal_time_scaled()};
  const DecoherenceFactors f = factors_at(fx.model, t);
  const double p = 0.05;
  const double pp = -0.03;
  const double ratio =
      std::abs(rho_p<1>({p}, {pp}, f, fx.pk).value) / std::abs(rho_p_initial<1>({p}, {pp}, fx.pk).value);
  EXPECT_NEAR(ratio, coherence_ratio(fx.model, p - pp, t), 1e-12 * ratio);
}

TEST(RhoR, PeakValueAtZero) {
  const GaussianPacket<3> pk({0.0, 0.0, 0.0}, 0.1, {0.0, 0.0, 0.0}, 0.0128);
  const complex v = rho_r_initial<3>({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, pk).value;
  const double expected = pk.normalization() * std::pow(pk.delta_p() / pk.delta_r(), 3);
  EXPECT_NEAR(v.real(), expected, 1e-12 * expected);
  EXPECT_EQ(v.imag(), 0.0);
}

TEST(RhoR, UnitTraceAtAllTimes) {
  Fixture fx;
  for (double s : times(fx.model)) {
    const DecoherenceFactors f = factors_at(fx.model, ScaledTime{s});
    EXPECT_NEAR(trapezoid_trace_r(fx.pk, f), 1.0, 1e-8) << s;
  }
}

TEST(RhoR, Hermitian) {
  Fixture fx;
  for (double s : times(fx.model)) {
    const DecoherenceFactors f = factors_at(fx.model, ScaledTime{s});
    const double w = position_shape(fx.pk, f).delta_r_t;
    const double c = -2.0 * fx.pk.p0()[0] * f.phi * fx.pk.hbar();
    const complex a = rho_r<1>({c + 0.3 * w}, {c - 0.7 * w}, f, fx.pk).value;
    const complex b = rho_r<1>({c - 0.7 * w}, {c + 0.3 * w}, f, fx.pk).value;
    EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12 * std::abs(a));
  }
}

TEST(RhoR, FreeEvolutionDiagonal) {
  ModelParams p;
  p.alpha = 0.0;
  const Model m(p);
  const GaussianPacket<1> pk = GaussianPacket<1>::from_model(m);
  const double s = 50.0;
  const DecoherenceFactors f = factors_at(m, ScaledTime{s});
  const double centre = pk.p0()[0] * s;
  const double dr = pk.delta_r() * std::sqrt(1.0 + std::pow(pk.delta_p() * s / pk.delta_r(), 2));
  // Per-component variance is dr^2/3.
  for (double q : {-2.0, -0.5, 0.0, 1.0}) {
    const double x = centre + q * dr;
    const double expected = std::sqrt(3.0 / (2.0 * std::numbers::pi)) / dr *
                            std::exp(-1.5 * q * q);
    EXPECT_NEAR(rho_r<1>({x}, {x}, f, pk).value.real(), expected, 1e-12 * expected);
  }
}

TEST(RhoR, WidthMatchesZFactor) {
  Fixture fx;
  for (double s : times(fx.model)) {
    const DecoherenceFactors f = factors_at(fx.model, ScaledTime{s});
    const PositionShape shape = position_shape(fx.pk, f);
    EXPECT_NEAR(shape.delta_r_t * shape.delta_r_t / (3.0 * fx.pk.d() * fx.pk.d() * shape.z), 1.0,
                1e-12);
  }
}

TEST(Grids, MatchPointwiseElements) {
  Fixture fx;
  const DecoherenceFactors f = factors_at(fx.model, ScaledTime{3.0});
  const std::vector<double> p{-0.1, 0.0, 0.1};
  const std::vector<double> q{-0.01, 0.0, 0.02};
  const Eigen::MatrixXcd mp = rho_p_grid(p, q, f, fx.pk);
  const Eigen::MatrixXcd mr = rho_r_grid(p, q, f, fx.pk);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(mp(i, j), rho_p<1>({p[i]}, {q[j]}, f, fx.pk).value);
      EXPECT_EQ(mr(i, j), rho_r<1>({p[i]}, {q[j]}, f, fx.pk).value);
    }
  }
}

TEST(Figure3, OffDiagonalSuppressedAfterThreeVacuumTimes) {
  ModelParams p;
  p.alpha = 500.0;
  p.p0 = {0.0, 0.0, 0.0};
  p.v0 = 0.0;
  const Model m(p);
  const GaussianPacket<1> pk = GaussianPacket<1>::from_model(m);
  const double s3 = 3.0 * std::exp(vacuum_decoherence_time(m, p.delta_p).log_scaled);
  const auto ratio = [&](double s) {
    const DecoherenceFactors f = factors_at(m, ScaledTime{s});
    return std::abs(rho_p<1>({p.delta_p}, {-p.delta_p}, f, pk).value) /
           std::abs(rho_p<1>({0.0}, {0.0}, f, pk).value);
  };
  EXPECT_LT(ratio(s3), ratio(0.0));
  const DecoherenceFactors f0 = factors_at(m, ScaledTime{0.0});
  EXPECT_NEAR(std::abs(rho_p<1>({0.0}, {0.0}, f0, pk).value) / pk.normalization_1d(), 1.0, 1e-15);
}
