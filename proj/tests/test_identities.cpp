#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "br2d/identities.hpp"

namespace id = br2d::ident;

TEST(AngularOrthogonality, OffDiagonalVanishes) {
  for (double q : {0.3, 0.6, 0.9}) {
    for (int l = 0; l <= 3; ++l) {
      for (int lp = 0; lp <= 3; ++lp) {
        if (l == lp) continue;
        EXPECT_LE(std::abs(id::angular_orthogonality(q, l, lp).lhs), 1e-9);
      }
    }
  }
}

TEST(AngularOrthogonality, TwoPiConstant) {
  const auto r = id::angular_orthogonality(0.5, 1, 1);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.extras.at("ratio_4pi"), 0.5, 1e-8);
}

TEST(AngularOrthogonality, EllipticOracle) {
  const auto r = id::angular_orthogonality(0.9, 0, 0);
  EXPECT_NEAR(r.lhs.real(), 2.0 * std::numbers::pi * id::angular_moment_elliptic(0.9), 1e-7);
  EXPECT_THROW(id::angular_orthogonality(1.0, 0, 0), br2d::PreconditionError);
}

TEST(SineVanishing, Cases) {
  EXPECT_TRUE(id::sine_vanishing(0.3, 1).pass);
  EXPECT_TRUE(id::sine_vanishing(0.99, 5).pass);
  EXPECT_EQ(id::sine_vanishing(0.5, 0).lhs, 0.0);
}

TEST(AngularToLegendre, CasesAndScaling) {
  EXPECT_TRUE(id::angular_to_legendre(0, 1.0, 2.0).pass);
  EXPECT_TRUE(id::angular_to_legendre(3, 0.5, 0.7).pass);
  const auto a = id::angular_to_legendre(2, 0.4, 1.1);
  const auto b = id::angular_to_legendre(2, 4.0, 11.0);
  EXPECT_NEAR(b.lhs.real() * 10.0, a.lhs.real(), 1e-10 * a.lhs.real());
  EXPECT_NEAR(b.rhs.real() * 10.0, a.rhs.real(), 1e-12 * a.rhs.real());
  EXPECT_THROW(id::angular_to_legendre(0, 1.0, 1.0), br2d::DiagonalError);
}

// Closed-form reference values from an arbitrary-precision evaluation.
TEST(Hankel, FrozenClosedForms) {
  EXPECT_NEAR(id::hankel_closed(0, -0.5, 1.0), 0.46617442915423714, 1e-14);
  EXPECT_NEAR(id::hankel_closed(1, -0.5, 0.3), 0.18144164010158247, 1e-14);
  EXPECT_NEAR(id::hankel_closed(0, -1.5, 1.0), 1.5500283623715463, 1e-14);
  EXPECT_NEAR(id::hankel_closed(1, -1.5, 1.0), 0.31466935424540228, 1e-14);
  EXPECT_NEAR(id::hankel_closed(0, -0.5, 0.3), 0.81753279127924262, 1e-14);
  EXPECT_NEAR(id::hankel_closed(0, -1.5, 0.3), 1.7439305666194347, 1e-14);
  EXPECT_NEAR(id::hankel_closed(1, -0.5, 1.0), 0.308839752031536, 1e-14);
  EXPECT_NEAR(id::hankel_closed(1, -1.5, 0.3), 0.12763639456438062, 1e-14);
}

TEST(Hankel, QuadratureMatchesClosedForm) {
  for (int k : {0, 1}) {
    for (double a : {-0.5, -1.5}) {
      for (double p : {0.3, 1.0, 3.0}) EXPECT_TRUE(id::hankel_identity(k, a, p).pass) << k << " " << a << " " << p;
    }
  }
}

TEST(Hankel, SmallMomentumLimit) {
  const double g = br2d::specfun::gamma(1.5);
  EXPECT_NEAR(id::hankel_quadrature(0, -0.5, 1e-8).value, g, 1e-10);
  EXPECT_NEAR(id::hankel_closed(0, -0.5, 0.0), g, 1e-15);
}

TEST(QRecurrence, Residuals) {
  for (double t : {1.001, 1.25, 3.0, 1e3}) EXPECT_TRUE(id::q_recurrence(t).pass) << t;
}

TEST(Reconstruction, SingleChannelMatchesTwoDimensionalForm) {
  const auto bump = id::bump_profile(1.0, 2.0);
  const double dc = br2d::cert::critical_coupling().delta_c;
  const auto r0 = id::partial_wave_reconstruction({0}, bump, dc);
  EXPECT_TRUE(r0.pass);
  EXPECT_NEAR(r0.extras.at("counterfactual_ratio"), 2.0, 1e-3);
  const auto r2 = id::partial_wave_reconstruction({2}, bump, 0.2);
  EXPECT_TRUE(r2.pass);
}

TEST(Reconstruction, NegativeChannel) {
  id::PlaneGrid g;
  g.radial = 24;
  g.directions = 48;
  const auto r = id::partial_wave_reconstruction({-1}, id::bump_profile(1.0, 2.0), 0.3, 1e-3, g);
  EXPECT_TRUE(r.pass) << r.rel_error;
}

TEST(Reconstruction, KineticOnly) {
  const auto r = id::partial_wave_reconstruction({0}, id::bump_profile(1.0, 2.0), 0.0);
  EXPECT_LE(r.rel_error, 1e-6);
}
