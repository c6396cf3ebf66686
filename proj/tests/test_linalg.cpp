#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "br2d/linalg.hpp"

namespace la = br2d::linalg;

namespace {
la::SymmetricMatrix random_symmetric(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  la::SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m.set_symmetric(i, j, d(rng));
  return m;
}
}  // namespace

TEST(Linalg, KnownSpectrum) {
  la::SymmetricMatrix m(2);
  m.set_symmetric(0, 0, 2.0);
  m.set_symmetric(1, 1, 2.0);
  m.set_symmetric(0, 1, 1.0);
  const auto d = la::symmetric_eigen(m);
  EXPECT_NEAR(d.values[0], 1.0, 1e-15);
  EXPECT_NEAR(d.values[1], 3.0, 1e-15);
}

TEST(Linalg, TridiagonalQlAgreesWithJacobi) {
  const auto m = random_symmetric(40, 3);
  const auto a = la::symmetric_eigen(m);
  const auto b = la::jacobi_eigen(m);
  for (std::size_t i = 0; i < 40; ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-11);
  for (std::size_t i = 1; i < 40; ++i) EXPECT_LE(a.values[i - 1], a.values[i]);
}

TEST(Linalg, ResidualsAndOrthonormality) {
  const auto m = random_symmetric(60, 5);
  const auto d = la::symmetric_eigen(m);
  for (std::size_t k = 0; k < 60; k += 7) {
    EXPECT_LT(la::eigen_residual(m, d.values[k], d.vectors[k]), 1e-12 * la::spectral_norm(d));
    EXPECT_NEAR(la::norm2(d.vectors[k]), 1.0, 1e-13);
    EXPECT_NEAR(la::dot(d.vectors[k], d.vectors[(k + 1) % 60]), 0.0, 1e-13);
  }
  EXPECT_EQ(m.max_asymmetry(), 0.0);
}
