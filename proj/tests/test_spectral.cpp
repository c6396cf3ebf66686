#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "br2d/certificate.hpp"
#include "br2d/spectral.hpp"

namespace {

std::shared_ptr<const br2d::RadialGrid> small_grid() {
  static const auto g =
      std::make_shared<const br2d::RadialGrid>(br2d::build_radial_grid(100, br2d::MapKind::rational, 1e4));
  return g;
}

const br2d::KernelMatrix& kernel0() {
  static const br2d::KernelMatrix k = br2d::assemble_kernel(small_grid(), {0});
  return k;
}

}  // namespace

TEST(Spectral, FreeFormHasFloorOne) {
  const auto r = br2d::lowest_eigenvalue(br2d::form_from_kernel(kernel0(), 0.0));
  EXPECT_GE(r.lambda_min, 1.0 - 1e-12);
  EXPECT_LE(r.lambda_min, 1.01);
}

// Reference values of this discretization (n = 100, rational map, p_max = 1e4).
TEST(Spectral, CriticalCouplingLowestEigenvalue) {
  const double dc = br2d::cert::critical_coupling().delta_c;
  const auto r = br2d::lowest_eigenvalue(br2d::form_from_kernel(kernel0(), dc));
  EXPECT_NEAR(r.lambda_min, 0.496836, 5e-6);
  EXPECT_GE(r.lambda_min, 1.0 - 2.0 * dc);
  EXPECT_LT(r.residual, 1e-10);
  EXPECT_LT(r.edge_mass, 1e-2);
}

TEST(Spectral, SweepDecreasesWithCoupling) {
  const auto rows = br2d::delta_sweep(kernel0(), {0.0, 0.1, 0.2, 0.3, 0.35});
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].lambda_min, rows[i - 1].lambda_min);
  for (const auto& r : rows) EXPECT_GE(r.lambda_min, 1.0 - 2.0 * r.delta - 0.02);
}

TEST(Spectral, RayleighQuotientBoundsLowestEigenvalue) {
  const auto form = br2d::form_from_kernel(kernel0(), 0.3);
  const auto r = br2d::lowest_eigenvalue(form);
  EXPECT_NEAR(br2d::rayleigh_quotient(form, r.eigenvector), r.lambda_min, 1e-12);
  const auto g = br2d::sample_on_grid(*small_grid(), [](double p) { return std::exp(-p) * p; });
  EXPECT_GE(br2d::rayleigh_quotient(form, g), r.lambda_min);
}

TEST(Spectral, KernelMatrixIsSymmetric) {
  EXPECT_EQ(kernel0().matrix.max_asymmetry(), 0.0);
}

TEST(Spectral, ThreadedAssemblyMatchesSerial) {
  const auto g = std::make_shared<const br2d::RadialGrid>(br2d::build_radial_grid(24, br2d::MapKind::rational, 1e3));
  const auto a = br2d::assemble_kernel(g, {1}, 1);
  const auto b = br2d::assemble_kernel(g, {1}, 3);
  for (std::size_t i = 0; i < 24; ++i)
    for (std::size_t j = 0; j < 24; ++j) EXPECT_EQ(a.matrix(i, j), b.matrix(i, j));
}

TEST(Spectral, Preconditions) {
  EXPECT_THROW(br2d::form_from_kernel(kernel0(), -0.1), br2d::PreconditionError);
  EXPECT_THROW(br2d::delta_sweep(kernel0(), {}), br2d::PreconditionError);
  const auto form = br2d::form_from_kernel(kernel0(), 0.1);
  EXPECT_THROW(br2d::rayleigh_quotient(form, std::vector<double>(3, 1.0)), br2d::PreconditionError);
}
