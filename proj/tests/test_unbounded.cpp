#include <gtest/gtest.h>

#include <cmath>

#include "br2d/unbounded.hpp"

namespace ub = br2d::unbounded;

TEST(INu, ClosedFormsAndQuadrature) {
  EXPECT_NEAR(ub::i_nu_closed(-0.5), 13.750371636040746, 1e-12);
  EXPECT_NEAR(ub::i_nu_closed(0.5), 2.8710800441845200, 1e-13);
  for (double nu : {-0.5, 0.5}) {
    const auto r = ub::i_nu_constant(nu);
    EXPECT_LT(r.rel_error, 1e-10);
    EXPECT_LT(r.half_asymmetry, 1e-10);
  }
  EXPECT_THROW(ub::i_nu_closed(1.5), br2d::PreconditionError);
}

TEST(Monotonicity, WithinHypothesisIncreasing) {
  for (double nu : {-0.5, 0.5}) {
    const auto m = ub::lemma_monotonicity_check(nu, -0.5, 1000);
    EXPECT_TRUE(m.within_hypothesis);
    EXPECT_TRUE(m.increasing);
  }
}

TEST(Monotonicity, OutsideHypothesisReported) {
  const auto m = ub::lemma_monotonicity_check(-0.5, -0.9, 1000);
  EXPECT_FALSE(m.within_hypothesis);
  EXPECT_FALSE(m.increasing);
  EXPECT_GT(m.violations, 0u);
}

TEST(Window, TailsBoundedAndInequality) {
  const auto w = ub::window_tail_bounds({2.0, 4.0}, -0.5);
  EXPECT_LE(w.tail_low, w.i_nu);
  EXPECT_LE(w.tail_high, w.i_nu);
  EXPECT_NEAR(w.tail_low, w.tail_high, 1e-9);  // p -> 1/p symmetry of the kernel
  EXPECT_TRUE(w.inequality_holds);
  EXPECT_LT(w.decomposition_defect, 1e-10);
}

TEST(Window, DegenerateWindow) {
  const auto w = ub::window_tail_bounds({3.0, 3.0001}, 0.5);
  EXPECT_LT(w.window_integral, 1e-6);
  EXPECT_TRUE(w.tails_bounded);
  EXPECT_THROW(ub::window_tail_bounds({0.5, 3.0}, 0.5), br2d::PreconditionError);
  EXPECT_THROW(ub::window_tail_bounds({3.0, 2.0}, 0.5), br2d::PreconditionError);
}

TEST(Window, RandomWindows) {
  for (const auto& w : ub::random_window_checks(5, 1e4, 3)) {
    EXPECT_TRUE(w.inequality_holds) << w.window.a << " " << w.window.b;
    EXPECT_TRUE(w.tails_bounded);
  }
}

TEST(TrialForm, KineticOnlyBracket) {
  const auto r = ub::trial_form_value({2.0, 20.0}, 0.0);
  EXPECT_NEAR(r.form_value, 2.36265316283495, 1e-10);
  EXPECT_GE(r.form_value, std::log(10.0));
  EXPECT_LE(r.form_value, std::log(10.0) + 1.0);
  EXPECT_NEAR(r.norm_sq, 1.0 / 2.0 - 1.0 / 20.0, 1e-15);
}

TEST(TrialForm, KineticClosedFormMatchesQuadrature) {
  const double q = br2d::quad::integrate_adaptive([](double p) { return br2d::energy(p) / (p * p); }, 3.0, 300.0,
                                                  1e-13)
                       .value;
  EXPECT_NEAR(ub::kinetic_antiderivative(300.0) - ub::kinetic_antiderivative(3.0), q, 1e-11);
}

TEST(TrialForm, SubcriticalRespectsFloor) {
  const double dc = br2d::cert::critical_coupling().delta_c;
  for (double d : {0.1, dc}) {
    for (auto w : {ub::TrialWindow{2.0, 20.0}, ub::TrialWindow{50.0, 5e3}}) {
      const auto r = ub::trial_form_value(w, d);
      EXPECT_GE(r.form_value, (1.0 - 2.0 * d) * r.norm_sq);
    }
  }
}

TEST(TrialForm, Beta2WindowMinimum) {
  EXPECT_GE(ub::beta2_window_minimum({50.0, 5e3}), 0.48);
  EXPECT_GE(ub::beta2_window_minimum({3.0, 5.0}), 0.5 - 1.0 / 3.0);
}

// Rows cross-checked against an independent double-precision quadrature in
// momentum coordinates.
TEST(Divergence, RowsAndSlope) {
  const auto d = ub::divergence_demo(0.5, 50.0, {5e3, 5e4, 5e5});
  ASSERT_EQ(d.rows.size(), 3u);
  EXPECT_NEAR(d.rows[0].form_value, 0.45324, 1e-4);
  EXPECT_NEAR(d.rows[1].form_value, -0.15424, 1e-4);
  EXPECT_NEAR(d.rows[2].form_value, -0.85445, 1e-4);
  EXPECT_TRUE(d.strictly_decreasing);
  EXPECT_TRUE(d.norms_bounded);
  EXPECT_LE(d.slope, d.predicted_slope + 0.05);
  EXPECT_LT(d.slope, 0.0);
}

TEST(Divergence, Preconditions) {
  const double dc = br2d::cert::critical_coupling().delta_c;
  EXPECT_THROW(ub::divergence_demo(dc, 1e6, {2e6}), br2d::PreconditionError);
  EXPECT_THROW(ub::divergence_demo(0.3, 50.0, {5e3}), br2d::PreconditionError);
  EXPECT_THROW(ub::divergence_demo(0.379, 20.0, {5e3}), br2d::PreconditionError);
  EXPECT_NEAR(ub::qualifying_a(0.5), 2.0 / (1.0 - dc / 0.5), 1e-12);
  EXPECT_TRUE(std::isinf(ub::qualifying_a(0.3)));
}

TEST(Divergence, SlopeFit) {
  std::vector<ub::DivergenceRow> rows(3);
  for (int i = 0; i < 3; ++i) {
    rows[static_cast<std::size_t>(i)].log_ratio = i;
    rows[static_cast<std::size_t>(i)].form_value = 1.0 - 0.5 * i;
  }
  EXPECT_NEAR(ub::fitted_slope(rows), -0.5, 1e-15);
}
