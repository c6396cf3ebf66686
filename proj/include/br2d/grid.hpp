#pragma once

// Mapped Gauss-Legendre grids on the truncated half-line and the Nystrom
// diagonal: the self-interaction of one grid cell under the log-singular
// channel kernel.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "br2d/error.hpp"
#include "br2d/integrate.hpp"
#include "br2d/kernel.hpp"

namespace br2d {

enum class MapKind { rational, exponential };

inline std::string to_string(MapKind kind) {
  return kind == MapKind::rational ? "rational" : "exponential";
}

inline MapKind map_kind_from_string(const std::string& name) {
  if (name == "rational") return MapKind::rational;
  if (name == "exponential") return MapKind::exponential;
  throw PreconditionError("unknown map kind '" + name + "' (expected rational or exponential)");
}

struct GridSpec {
  std::size_t n = 400;
  MapKind map_kind = MapKind::rational;
  double p_max = 1e4;
  /// Rational map p = scale * ((1+s)/(1-s))^grading; exponential map
  /// p = -scale * log((1-s)/2). Grading is ignored by the exponential map.
  double scale = 2.0;
  int grading = 2;
};

/// Errors of the three reference integrals every grid is checked against.
struct GridSelfTest {
  double exp_decay = 0.0;       // int e^{-p} dp = 1
  double gaussian_moment = 0.0;  // int p e^{-p^2} dp = 1/2
  double inverse_sqrt = 0.0;    // int p^{-1/2} e^{-p} dp = sqrt(pi)
};

struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  GridSpec spec;
  GridSelfTest self_test;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

inline RadialGrid build_radial_grid(const GridSpec& spec) {
  if (spec.n < 8) throw PreconditionError("build_radial_grid: n must be at least 8");
  if (!(spec.p_max > 0.0) || !(spec.scale > 0.0) || !std::isfinite(spec.p_max)) {
    throw PreconditionError("build_radial_grid: p_max and scale must be positive and finite");
  }
  if (spec.map_kind == MapKind::rational && spec.grading < 1) {
    throw PreconditionError("build_radial_grid: grading must be at least 1");
  }
  double s_max = 0.0;
  if (spec.map_kind == MapKind::rational) {
    const double r = std::pow(spec.p_max / spec.scale, 1.0 / spec.grading);
    s_max = (r - 1.0) / (r + 1.0);
  } else {
    s_max = 1.0 - 2.0 * std::exp(-spec.p_max / spec.scale);
  }
  if (!(s_max > -1.0)) throw PreconditionError("build_radial_grid: p_max below the map scale");

  const quad::GaussRule rule = quad::gauss_legendre(spec.n);
  RadialGrid grid;
  grid.spec = spec;
  grid.nodes.resize(spec.n);
  grid.weights.resize(spec.n);
  const double half = 0.5 * (s_max + 1.0);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double s = -1.0 + half * (rule.nodes[i] + 1.0);
    const double ds = half * rule.weights[i];
    double p = 0.0;
    double dp = 0.0;
    if (spec.map_kind == MapKind::rational) {
      const double m = spec.grading;
      const double ratio = (1.0 + s) / (1.0 - s);
      p = spec.scale * std::pow(ratio, m);
      // d/ds ((1+s)/(1-s))^m = m ratio^{m-1} * 2/(1-s)^2
      dp = spec.scale * m * std::pow(ratio, m - 1.0) * 2.0 / ((1.0 - s) * (1.0 - s));
    } else {
      p = -spec.scale * std::log(0.5 * (1.0 - s));
      dp = spec.scale / (1.0 - s);
    }
    grid.nodes[i] = p;
    grid.weights[i] = dp * ds;
  }
  grid.self_test.exp_decay = std::abs(grid.integrate([](double p) { return std::exp(-p); }) - 1.0);
  grid.self_test.gaussian_moment =
      std::abs(grid.integrate([](double p) { return p * std::exp(-p * p); }) - 0.5);
  grid.self_test.inverse_sqrt =
      std::abs(grid.integrate([](double p) { return std::exp(-p) / std::sqrt(p); }) -
               std::sqrt(std::numbers::pi));
  return grid;
}

inline RadialGrid build_radial_grid(std::size_t n, MapKind map_kind, double p_max) {
  GridSpec spec;
  spec.n = n;
  spec.map_kind = map_kind;
  spec.p_max = p_max;
  return build_radial_grid(spec);
}

/// Interval [lo, hi] of width w_i attributed to node i, clipped at p = 0.
struct Cell {
  double lo = 0.0;
  double hi = 0.0;
};

inline Cell node_cell(const RadialGrid& grid, std::size_t i) {
  if (i >= grid.size()) throw PreconditionError("node_cell: index out of range");
  const double w = grid.weights[i];
  const double lo = std::max(grid.nodes[i] - 0.5 * w, 0.0);
  return {lo, lo + w};
}

/// int_lo^hi int_lo^hi K_k(p, q) dq dp. The singular part s log|p - q|, with s
/// the diagonal singularity coefficient at the cell center, is integrated in
/// closed form; the continuous remainder by nested adaptive quadrature over
/// the lower triangle (the integrand is symmetric).
inline double cell_self_interaction(Channel ch, double lo, double hi, double rel_tol = 1e-8) {
  if (!(hi > lo) || lo < 0.0) throw PreconditionError("cell_self_interaction: need 0 <= lo < hi");
  const double h = hi - lo;
  const double center = 0.5 * (lo + hi);
  const double s_c = log_singularity_coefficient(center, center);
  const double singular = s_c * h * h * (std::log(h) - 1.5);

  quad::AdaptiveOptions inner_opt;
  inner_opt.rel_tol = rel_tol;
  inner_opt.abs_tol = rel_tol * h * 1e-3;
  quad::AdaptiveOptions outer_opt = inner_opt;
  outer_opt.abs_tol = rel_tol * h * h * 1e-3;

  auto inner = [&](double p) {
    if (p <= lo) return 0.0;
    auto remainder = [&](double q) {
      if (q >= p || q <= 0.0) return 0.0;
      return channel_kernel(ch, p, q) + s_c * std::log(p - q);
    };
    return quad::integrate_adaptive(remainder, lo, p, inner_opt).value;
  };
  const double smooth = 2.0 * quad::integrate_adaptive(inner, lo, hi, outer_opt).value;
  return smooth - singular;
}

/// Nystrom diagonal entry for node i: (1/w_i) times the self-interaction of
/// its cell, so that sum_j sqrt(w_i w_j) K_ij g_j uses w_i K_ii on the diagonal.
inline double diagonal_cell_weight(const RadialGrid& grid, std::size_t i, Channel ch) {
  const Cell c = node_cell(grid, i);
  return cell_self_interaction(ch, c.lo, c.hi) / grid.weights[i];
}

}  // namespace br2d
