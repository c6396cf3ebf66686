#include <gtest/gtest.h>

#include <cmath>

#include "br2d/grid.hpp"

TEST(Grid, SelfTestsOnDefaultMap) {
  const auto g = br2d::build_radial_grid(64, br2d::MapKind::rational, 1e4);
  EXPECT_EQ(g.size(), 64u);
  EXPECT_LT(g.self_test.exp_decay, 1e-12);
  EXPECT_LT(g.self_test.gaussian_moment, 1e-9);
  EXPECT_LT(g.self_test.inverse_sqrt, 1e-12);
  EXPECT_GT(g.nodes.front(), 0.0);
  EXPECT_LT(g.nodes.back(), 1e4);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g.nodes[i], g.nodes[i - 1]);
}

TEST(Grid, ExponentialMap) {
  br2d::GridSpec s;
  s.n = 80;
  s.map_kind = br2d::MapKind::exponential;
  s.p_max = 200.0;
  const auto g = br2d::build_radial_grid(s);
  EXPECT_LT(g.self_test.exp_decay, 1e-10);
  EXPECT_LT(g.nodes.back(), 200.0);
}

TEST(Grid, MapNames) {
  EXPECT_EQ(br2d::map_kind_from_string("rational"), br2d::MapKind::rational);
  EXPECT_EQ(br2d::to_string(br2d::MapKind::exponential), "exponential");
  EXPECT_THROW(br2d::map_kind_from_string("cubic"), br2d::PreconditionError);
}

TEST(Grid, InvalidSpecs) {
  EXPECT_THROW(br2d::build_radial_grid(4, br2d::MapKind::rational, 1e4), br2d::PreconditionError);
  EXPECT_THROW(br2d::build_radial_grid(64, br2d::MapKind::rational, -1.0), br2d::PreconditionError);
}

// Reference values from brute-force double quadrature of the channel kernel.
TEST(Grid, CellSelfInteraction) {
  EXPECT_NEAR(br2d::cell_self_interaction({0}, 0.9, 1.1), 0.1957450102700467, 1e-9);
  EXPECT_NEAR(br2d::cell_self_interaction({5}, 0.9, 1.1), 0.0664886011771, 1e-9);
}

TEST(Grid, CellsCoverNodes) {
  const auto g = br2d::build_radial_grid(32, br2d::MapKind::rational, 1e3);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = br2d::node_cell(g, i);
    EXPECT_GE(c.lo, 0.0);
    EXPECT_NEAR(c.hi - c.lo, g.weights[i], 1e-12 * g.weights[i]);
  }
  EXPECT_THROW(br2d::node_cell(g, 32), br2d::PreconditionError);
}
