#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "br2d/kernel.hpp"

using br2d::Channel;

TEST(Kernel, EnergyAndNormalization) {
  EXPECT_DOUBLE_EQ(br2d::energy(0.0), 1.0);
  EXPECT_NEAR(br2d::energy(3.0), std::sqrt(10.0), 1e-15);
  EXPECT_NEAR(br2d::energy(br2d::Momentum2D{3.0, 4.0}), std::sqrt(26.0), 1e-15);
  const double e = br2d::energy(2.0);
  EXPECT_NEAR(br2d::normalization(2.0), std::sqrt(2.0 * e * (e + 1.0)), 1e-15);
}

TEST(Kernel, BetaFormsAgree) {
  for (double p : {1e-6, 0.3, 1.0, 40.0}) {
    for (double q : {2e-4, 0.9, 7.0, 1e4}) {
      const auto a = br2d::beta_weights(p, q);
      const auto b = br2d::beta_weights_quotient(p, q);
      EXPECT_NEAR(a.beta1, b.beta1, 1e-15);
      EXPECT_NEAR(a.beta2, b.beta2, 1e-14 * b.beta2 + 1e-300);
    }
  }
}

TEST(Kernel, DiagonalSingularityCoefficientIsOne) {
  for (double p : {0.01, 1.0, 100.0}) EXPECT_NEAR(br2d::log_singularity_coefficient(p, p), 1.0, 1e-15);
}

TEST(Kernel, ChannelDegrees) {
  EXPECT_EQ(br2d::channel_degrees(Channel{0}), std::make_pair(0, 1));
  EXPECT_EQ(br2d::channel_degrees(Channel{3}), std::make_pair(3, 4));
  EXPECT_EQ(br2d::channel_degrees(Channel{-1}), std::make_pair(1, 0));
  EXPECT_EQ(br2d::channel_degrees(Channel{-4}), std::make_pair(4, 3));
}

TEST(Kernel, SymmetricAndPositive) {
  for (int k : {-3, -1, 0, 2, 7}) {
    for (auto [p, q] : {std::pair{0.2, 0.5}, {1.0, 3.0}, {50.0, 51.0}}) {
      const double a = br2d::channel_kernel({k}, p, q);
      EXPECT_GT(a, 0.0);
      EXPECT_NEAR(a, br2d::channel_kernel({k}, q, p), 1e-15 * a);
    }
  }
}

TEST(Kernel, SharedSequenceMatchesSingleChannel) {
  const std::vector<Channel> chans{{0}, {1}, {-1}, {5}, {-5}};
  const auto all = br2d::channel_kernels(chans, 0.8, 1.9);
  for (std::size_t i = 0; i < chans.size(); ++i) {
    EXPECT_NEAR(all[i], br2d::channel_kernel(chans[i], 0.8, 1.9), 1e-13 * all[i]);
  }
}

// K_0 dominates every other channel pointwise.
TEST(Kernel, ChannelZeroDominates) {
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double p = std::pow(10.0, -2.0 + 4.0 * i / 19.0);
      const double q = std::pow(10.0, -2.0 + 4.0 * j / 19.0) * 1.03;
      std::vector<Channel> chans;
      for (int k = -10; k <= 10; ++k) chans.push_back({k});
      const auto ks = br2d::channel_kernels(chans, p, q);
      for (std::size_t c = 0; c < chans.size(); ++c) EXPECT_GE(ks[10], ks[c]) << p << " " << q;
    }
  }
}

TEST(Kernel, FullKernel) {
  const br2d::Momentum2D a{1.0, 0.0};
  const br2d::Momentum2D b{0.0, 2.0};
  const auto k = br2d::full_kernel(a, b);
  const auto kt = br2d::full_kernel(b, a);
  EXPECT_NEAR(k.real(), kt.real(), 1e-15);
  EXPECT_NEAR(k.imag(), -kt.imag(), 1e-15);  // Hermitian
  EXPECT_THROW(br2d::full_kernel(a, a), br2d::DiagonalError);
}
