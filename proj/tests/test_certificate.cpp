#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "br2d/certificate.hpp"

namespace cert = br2d::cert;
using cert::Representation;

TEST(CriticalCoupling, OracleDigits) {
  const auto cc = cert::critical_coupling();
  // 40-digit evaluation of the closed form.
  EXPECT_NEAR(cc.delta_c, 0.37801663946445575, 1e-15);
  EXPECT_NEAR(cc.floor, 0.24396672107108850, 2e-15);
  EXPECT_NEAR(cc.delta_c, 0.378, 5e-4);
}

TEST(CriticalCoupling, SeriesRatioIdentity) {
  // delta_c^{-1} = R0(0) + R1(0)/3, which makes f bounded at x = 0.
  const double g = br2d::specfun::gamma(0.25);
  const double g4 = g * g * g * g;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  EXPECT_NEAR(1.0 / cert::critical_coupling().delta_c, g4 / (8 * pi2) + 8 * pi2 / g4, 1e-14);
}

// I_k(p) reference values from an arbitrary-precision closed-form evaluation.
TEST(Transforms, FrozenValues) {
  EXPECT_NEAR(cert::i_k_closed(0, 0.1), 1.7575762430293458, 1e-14);
  EXPECT_NEAR(cert::i_k_closed(0, 1.0), 4.8695577160822675, 1e-14);
  EXPECT_NEAR(cert::i_k_closed(0, 10.0), 6.4147455353649584, 1e-14);
  EXPECT_NEAR(cert::i_k_closed(1, 0.1), 0.043816491470818721, 1e-15);
  EXPECT_NEAR(cert::i_k_closed(1, 1.0), 0.98856293160719997, 1e-14);
  EXPECT_NEAR(cert::i_k_closed(1, 10.0), 2.6865602094034525, 1e-14);
  EXPECT_NEAR(cert::trial_h(1, 1.0), 0.30883975203153602, 1e-15);
}

TEST(Transforms, ClosedFormMatchesQuadrature) {
  for (int k : {0, 1}) {
    for (double p : {0.05, 0.1, 1.0, 3.0, 10.0}) {
      const double c = cert::i_k_closed(k, p);
      EXPECT_NEAR(cert::i_k_quadrature(k, p).value / c, 1.0, 1e-9) << k << " " << p;
    }
  }
}

TEST(Transforms, Preconditions) {
  EXPECT_THROW(cert::trial_h(2, 1.0), br2d::PreconditionError);
  EXPECT_THROW(cert::i_k_closed(0, 0.0), br2d::DomainError);
}

TEST(EnergyBound, LimitAtZeroAndLargeMomentum) {
  const double dc = cert::critical_coupling().delta_c;
  EXPECT_DOUBLE_EQ(cert::energy_bound(0.0, dc), 1.0 - 2.0 * dc);
  EXPECT_NEAR(cert::energy_bound(1e-7, dc), 1.0 - 2.0 * dc, 1e-9);
  // f(1/e(p)) at p = 1e3 from a 40-digit evaluation.
  EXPECT_NEAR(cert::energy_bound(1e3, dc), 0.50967560786447384, 1e-11);
  EXPECT_THROW(cert::energy_bound(-1.0, dc), br2d::DomainError);
}

TEST(EnergyBound, EqualsFOfInverseEnergy) {
  const double dc = cert::critical_coupling().delta_c;
  for (double p : {1e-5, 1e-2, 0.5, 1.0, 7.0, 100.0, 1e3}) {
    const double x = 1.0 / br2d::energy(p);
    for (auto rep : {Representation::hypergeometric, Representation::legendre}) {
      EXPECT_NEAR(cert::energy_bound(p, dc), cert::f_of_x(x, rep, dc), 1e-10) << p;
    }
  }
}

// Reference values of f from a 40-digit Legendre evaluation.
TEST(FunctionF, FrozenValuesBothRoutes) {
  const std::pair<double, double> cases[] = {
      {0.05, 0.48108887721429385}, {0.4, 0.34907843124455806}, {0.9, 0.25642861325924071},
      {0.001, 0.50967560755269941}};
  for (auto [x, v] : cases) {
    EXPECT_NEAR(cert::f_of_x(x, Representation::hypergeometric), v, 1e-12) << x;
    EXPECT_NEAR(cert::f_of_x(x, Representation::legendre), v, 1e-12) << x;
  }
}

TEST(FunctionF, InfimumAtOneEqualsFloor) {
  const auto cc = cert::critical_coupling();
  EXPECT_NEAR(cert::f_of_x(1.0, Representation::hypergeometric), cc.floor, 1e-15);
  EXPECT_NEAR(cert::f_of_x(1.0, Representation::legendre), cc.floor, 1e-15);
  const auto inf = cert::f_infimum(10000);
  EXPECT_NEAR(inf.argmin, 1.0, 1e-12);
  EXPECT_NEAR(inf.value, cc.floor, 1e-12);
  EXPECT_THROW(cert::f_of_x(0.0, Representation::legendre), br2d::DomainError);
}

TEST(FunctionF, AboveFloorEverywhere) {
  const auto cc = cert::critical_coupling();
  for (int i = 1; i < 1000; ++i) EXPECT_GT(cert::f_of_x(i / 1000.0, Representation::hypergeometric), cc.floor);
}

TEST(Certificates, HighRegime) {
  const auto r = cert::certify_high_regime();
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.coefficients.size(), 5u);
  const double expected[] = {5798.0277, -9454.8152, 1872.6524, 475.4297, 20.8710};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(r.coefficients[i], expected[i], 1e-3);
  // Linear condition c1 + c2 (1 - x) at x = 0.4.
  EXPECT_NEAR(r.coefficients[0] + 0.6 * r.coefficients[1], 125.139, 1e-3);
}

TEST(Certificates, LowRegimeSignPatternAndValues) {
  const auto r = cert::certify_low_regime();
  EXPECT_TRUE(r.pass);
  const std::vector<std::string> pattern{"+", "-", "-", "+", "-"};
  EXPECT_EQ(r.signs, pattern);
  const double expected[] = {2098276066.0, -4068662962.0, -430060998.9, 2516389270.0, -28571568.67};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(r.coefficients[i] / expected[i], 1.0, 1e-8);
  EXPECT_NEAR(r.min_value, 5.623e8, 1e5);
}

TEST(Certificates, TruncatedSeriesBoundsHold) { EXPECT_TRUE(cert::truncated_series_bounds_check().pass); }

TEST(Certificates, SeriesRatioBounds) {
  for (auto id : cert::all_series) EXPECT_TRUE(cert::series_monotonicity_check(id, 50).pass) << cert::to_string(id);
}

TEST(Certificates, RationalReductionsAgree) {
  EXPECT_TRUE(cert::rational_reduction_check({0.01, 0.1, 0.25, 0.4, 0.55, 0.8, 1.0}).pass);
}

TEST(Certificates, ExpansionTails) {
  for (double nu : {-0.5, 0.5}) {
    for (int mu : {0, -1}) {
      const auto t = cert::expansion_tail_check(nu, mu, 0.4);
      EXPECT_TRUE(t.pass);
      EXPECT_TRUE(std::isfinite(t.tail));
    }
  }
}

TEST(Certificates, FullSuitePasses) {
  for (const auto& r : cert::certificate_suite()) EXPECT_TRUE(r.pass) << r.name;
}

TEST(Certificates, ReportPassIsConjunction) {
  cert::CertificateReport r;
  r.finalize();
  EXPECT_FALSE(r.pass);
  r.add("a", 1.0, true);
  r.finalize();
  EXPECT_TRUE(r.pass);
  r.add("b", -1.0, false);
  r.finalize();
  EXPECT_FALSE(r.pass);
}

TEST(ScalingReduction, ConvexCombinationIsExact) {
  const auto grid =
      std::make_shared<const br2d::RadialGrid>(br2d::build_radial_grid(60, br2d::MapKind::rational, 1e4));
  const auto kernel = br2d::assemble_kernel(grid, {0});
  const double dc = cert::critical_coupling().delta_c;
  const auto at_c = br2d::form_from_kernel(kernel, dc);
  for (double d : {0.0, 0.5 * dc, dc}) {
    const auto r = cert::scaling_reduction_check(d, br2d::form_from_kernel(kernel, d), at_c, 100);
    EXPECT_LE(r.identity_defect, 1e-12) << d;
    EXPECT_LE(r.inequality_violation, 1e-12) << d;
  }
  EXPECT_THROW(cert::scaling_reduction_check(0.5, br2d::form_from_kernel(kernel, 0.5), at_c), br2d::PreconditionError);
}
