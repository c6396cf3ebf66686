#pragma once

// One-dimensional integration rules: Gauss-Legendre nodes, a globally
// adaptive Gauss-Kronrod integrator with optional endpoint weakening, and a
// Wynn epsilon accelerator for slowly converging partial sums.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "br2d/error.hpp"

namespace br2d::quad {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_intervals = 4000;
  /// Map [a,b] through x = a + (b-a) u^2 (3 - 2u) so that integrable
  /// algebraic or logarithmic endpoint singularities become mild.
  bool weaken_endpoints = true;
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on (-1, 1), nodes ascending.
inline GaussRule gauss_legendre(std::size_t n) {
  if (n == 0) throw PreconditionError("gauss_legendre: n must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace detail {

// QUADPACK qk21 abscissae and weights.
inline constexpr std::array<double, 11> kronrod_x = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kronrod_w = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452038, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> gauss_w = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double resabs;
};

struct ByError {
  bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

template <class G>
Segment gauss_kronrod21(G& g, double a, double b, std::size_t& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(center);
  double kronrod = fc * kronrod_w[10];
  double gauss = 0.0;
  double resabs = std::abs(kronrod);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kronrod_x[j];
    const double f1 = g(center - dx);
    const double f2 = g(center + dx);
    kronrod += kronrod_w[j] * (f1 + f2);
    resabs += kronrod_w[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += gauss_w[j / 2] * (f1 + f2);
  }
  evals += 21;
  Segment s{a, b, kronrod * half, std::abs((kronrod - gauss) * half), resabs * std::abs(half)};
  if (!std::isfinite(s.value) || !std::isfinite(s.error)) {
    std::ostringstream msg;
    msg << "integrand not finite on [" << a << ", " << b << "]";
    throw QuadratureError(msg.str());
  }
  return s;
}

template <class G>
QuadratureResult adaptive_core(G& g, double a, double b, const AdaptiveOptions& opt) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::size_t evals = 0;
  std::priority_queue<Segment, std::vector<Segment>, ByError> active;
  std::vector<Segment> done;
  bool width_limited = false;

  auto accept_now = [&](const Segment& s) {
    return s.error <= 50.0 * eps * s.resabs || s.error == 0.0;
  };
  auto push = [&](const Segment& s) {
    if (accept_now(s)) {
      done.push_back(s);
    } else {
      active.push(s);
    }
  };

  push(gauss_kronrod21(g, a, b, evals));
  std::size_t intervals = 1;

  auto totals = [&]() {
    double value = 0.0;
    double comp = 0.0;
    double err = 0.0;
    auto add = [&](double v) {
      const double t = value + v;
      comp += (std::abs(value) >= std::abs(v)) ? (value - t) + v : (v - t) + value;
      value = t;
    };
    for (const auto& s : done) {
      add(s.value);
      err += s.error;
    }
    auto copy = active;
    while (!copy.empty()) {
      add(copy.top().value);
      err += copy.top().error;
      copy.pop();
    }
    return std::pair<double, double>{value + comp, err};
  };

  double running_err = 0.0;
  double running_val = 0.0;
  {
    auto [v, e] = totals();
    running_val = v;
    running_err = e;
  }
  while (!active.empty()) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(running_val));
    if (running_err <= target) break;
    if (intervals >= opt.max_intervals) break;
    Segment worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) <= 8.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      width_limited = true;
      done.push_back(worst);
      continue;
    }
    const Segment left = gauss_kronrod21(g, worst.a, mid, evals);
    const Segment right = gauss_kronrod21(g, mid, worst.b, evals);
    running_val += left.value + right.value - worst.value;
    running_err += left.error + right.error - worst.error;
    push(left);
    push(right);
    ++intervals;
    if (intervals % 64 == 0) {
      auto [v, e] = totals();
      running_val = v;
      running_err = e;
    }
  }
  auto [value, err] = totals();
  const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
  if (err > target) {
    // Segments that stopped at the roundoff floor are trusted; anything else
    // over tolerance is an explicit failure.
    double unresolved = 0.0;
    auto copy = active;
    while (!copy.empty()) {
      unresolved += copy.top().error;
      copy.pop();
    }
    if (unresolved > 0.0 || width_limited) {
      std::ostringstream msg;
      msg << "adaptive quadrature on [" << a << ", " << b << "] did not converge: estimate " << value
          << ", error " << err << ", target " << target << ", intervals " << intervals;
      throw QuadratureError(msg.str());
    }
  }
  return {value, err, evals};
}

}  // namespace detail

/// Globally adaptive 21-point Gauss-Kronrod integration of f over [a, b].
/// Throws QuadratureError when the interval budget is exhausted above tolerance.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt) {
  if (!(a < b)) {
    if (a == b) return {};
    throw PreconditionError("integrate_adaptive: requires a < b");
  }
  if (!opt.weaken_endpoints) {
    auto g = [&](double x) { return f(x); };
    return detail::adaptive_core(g, a, b, opt);
  }
  const double width = b - a;
  auto g = [&](double u) {
    const double x = a + width * u * u * (3.0 - 2.0 * u);
    const double jac = 6.0 * width * u * (1.0 - u);
    if (jac == 0.0) return 0.0;
    return f(x) * jac;
  };
  return detail::adaptive_core(g, 0.0, 1.0, opt);
}

template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double tol) {
  AdaptiveOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;
  return integrate_adaptive(std::forward<F>(f), a, b, opt);
}

/// Integral of f over [a, inf) through x = a + scale * s / (1 - s).
template <class F>
QuadratureResult integrate_half_line(F&& f, double a, const AdaptiveOptions& opt,
                                     double scale = 1.0) {
  if (!(scale > 0.0)) throw PreconditionError("integrate_half_line: scale must be positive");
  auto g = [&](double s) {
    const double one_minus = 1.0 - s;
    if (one_minus <= 0.0) return 0.0;
    const double x = a + scale * s / one_minus;
    const double v = f(x);
    if (v == 0.0) return 0.0;
    return v * scale / (one_minus * one_minus);
  };
  return integrate_adaptive(g, 0.0, 1.0, opt);
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums; returns
/// the last stable even-column estimate.
inline double wynn_epsilon(const std::vector<double>& partial_sums) {
  const std::size_t n = partial_sums.size();
  if (n == 0) return 0.0;
  if (n < 3) return partial_sums.back();
  std::vector<std::vector<double>> eps(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) eps[i][1] = partial_sums[i];
  for (std::size_t k = 2; k <= n; ++k) {
    for (std::size_t i = 0; i + k <= n; ++i) {
      const double diff = eps[i + 1][k - 1] - eps[i][k - 1];
      if (diff == 0.0) return eps[i + 1][k - 1];
      eps[i][k] = eps[i + 1][k - 2] + 1.0 / diff;
    }
  }
  // Odd k in this indexing are the useful estimates (columns of the classic table).
  std::size_t best_k = 1;
  for (std::size_t k = 1; k <= n; k += 2) {
    if (n >= k) best_k = k;
  }
  const double est = eps[n - best_k][best_k];
  return std::isfinite(est) ? est : partial_sums.back();
}

}  // namespace br2d::quad
