#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "br2d/integrate.hpp"

namespace q = br2d::quad;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const q::GaussRule r = q::gauss_legendre(7);
  // Degree 13 is exact for 7 nodes.
  double s = 0.0;
  for (std::size_t i = 0; i < 7; ++i) s += r.weights[i] * std::pow(r.nodes[i], 12);
  EXPECT_NEAR(s, 2.0 / 13.0, 1e-15);
  double w = 0.0;
  for (double x : r.weights) w += x;
  EXPECT_NEAR(w, 2.0, 1e-15);
}

TEST(Adaptive, SmoothAndEndpointSingular) {
  EXPECT_NEAR(q::integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13).value,
              std::numbers::e - 1.0, 1e-13);
  EXPECT_NEAR(q::integrate_adaptive([](double x) { return std::log(x); }, 0.0, 1.0, 1e-12).value, -1.0, 1e-11);
  EXPECT_NEAR(q::integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 4.0, 1e-12).value, 4.0,
              1e-10);
}

TEST(Adaptive, EmptyAndReversedIntervals) {
  EXPECT_EQ(q::integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0, 1e-10).value, 0.0);
  EXPECT_THROW(q::integrate_adaptive([](double) { return 1.0; }, 3.0, 2.0, 1e-10), br2d::PreconditionError);
}

TEST(Adaptive, BudgetExhaustionThrows) {
  q::AdaptiveOptions opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-15;
  opt.max_intervals = 3;
  EXPECT_THROW(q::integrate_adaptive([](double x) { return std::sin(200.0 * x) / (x + 1e-3); }, 0.0, 1.0, opt),
               br2d::QuadratureError);
}

TEST(HalfLine, ExponentialAndAlgebraic) {
  q::AdaptiveOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-13;
  EXPECT_NEAR(q::integrate_half_line([](double x) { return std::exp(-x); }, 0.0, opt).value, 1.0, 1e-12);
  EXPECT_NEAR(q::integrate_half_line([](double x) { return 1.0 / (x * x); }, 1.0, opt).value, 1.0, 1e-12);
}

TEST(Wynn, AcceleratesAlternatingSeries) {
  std::vector<double> partial;
  double s = 0.0;
  for (int k = 0; k < 12; ++k) {
    s += (k % 2 ? -1.0 : 1.0) / (k + 1.0);
    partial.push_back(s);
  }
  EXPECT_GT(std::abs(partial.back() - std::log(2.0)), 1e-2);
  EXPECT_NEAR(q::wynn_epsilon(partial), std::log(2.0), 1e-8);
}
