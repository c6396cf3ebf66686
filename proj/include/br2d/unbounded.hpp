#pragma once

// Above the critical coupling: the constants I_nu, monotonicity of
// p^alpha Q_nu((p + 1/p)/2) on (0, 1), the window estimate for the Legendre
// kernel, and the trial family chi_(a,b)(p)/p whose channel-0 form value
// falls without bound as b grows.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "br2d/certificate.hpp"
#include "br2d/error.hpp"
#include "br2d/integrate.hpp"
#include "br2d/kernel.hpp"
#include "br2d/spectral.hpp"
#include "br2d/specfun.hpp"

namespace br2d::unbounded {

struct TrialWindow {
  double a = 2.0;
  double b = 4.0;
};

inline void validate(const TrialWindow& w) {
  if (!(w.a > 1.0 && w.b > w.a) || !std::isfinite(w.b)) {
    std::ostringstream msg;
    msg << "trial window needs 1 < a < b, got a = " << w.a << ", b = " << w.b;
    throw PreconditionError(msg.str());
  }
}

namespace detail {

/// nu in {-1/2, 1/2} as the channel index k of Q_{k-1/2}.
inline int degree_index(double nu) {
  if (nu == -0.5) return 0;
  if (nu == 0.5) return 1;
  throw PreconditionError("unbounded: nu must be -1/2 or 1/2");
}

/// Q_nu(cosh(sigma)) for sigma > 0, with z = e^{-sigma} kept exact.
inline double q_cosh(int k, double sigma) {
  specfun::QArgument arg;
  arg.z = std::exp(-sigma);
  arg.one_minus_z = -std::expm1(-sigma);
  arg.t = std::cosh(sigma);
  return specfun::legendre_q_half_direct(k, arg);
}

/// Q_nu((u + 1/u)/2) / u.
inline double scaled_q(int k, double u) {
  if (u == 1.0) return 0.0;  // measure-zero log singularity
  return specfun::legendre_q_half_direct(k, specfun::QArgument::from_momenta(u, 1.0)) / u;
}

inline quad::AdaptiveOptions tight(double tol) {
  quad::AdaptiveOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;
  opt.max_intervals = 20000;
  return opt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// I_nu

/// Gamma(1/4)^4/(4 pi) for nu = -1/2, 16 pi^3 / Gamma(1/4)^4 for nu = 1/2.
inline double i_nu_closed(double nu) {
  const int k = detail::degree_index(nu);
  const double g = specfun::gamma(0.25);
  const double g4 = g * g * g * g;
  const double pi = std::numbers::pi;
  return k == 0 ? g4 / (4.0 * pi) : 16.0 * pi * pi * pi / g4;
}

struct INuResult {
  double nu = 0.0;
  double quadrature = 0.0;
  double closed_form = 0.0;
  double rel_error = 0.0;
  /// int_0^1 and int_1^inf of the integrand; equal under p -> 1/p.
  double lower_half = 0.0;
  double upper_half = 0.0;
  double half_asymmetry = 0.0;
};

/// I_nu = int_0^inf (1/p) Q_nu((p + 1/p)/2) dp by adaptive quadrature of both
/// halves. The logarithmic singularity at p = 1 sits on an endpoint of each.
inline INuResult i_nu_constant(double nu, double tol = 1e-12) {
  const int k = detail::degree_index(nu);
  const auto opt = detail::tight(tol);
  auto f = [k](double p) { return detail::scaled_q(k, p); };
  INuResult r;
  r.nu = nu;
  r.lower_half = quad::integrate_adaptive(f, 0.0, 1.0, opt).value;
  r.upper_half = quad::integrate_half_line(f, 1.0, opt).value;
  r.quadrature = r.lower_half + r.upper_half;
  r.closed_form = i_nu_closed(nu);
  r.rel_error = std::abs(r.quadrature - r.closed_form) / r.closed_form;
  r.half_asymmetry = std::abs(r.lower_half - r.upper_half) / r.closed_form;
  return r;
}

// ---------------------------------------------------------------------------
// Monotonicity of p^alpha Q_nu((p + 1/p)/2) on (0, 1)

struct MonotonicityResult {
  double nu = 0.0;
  double alpha = 0.0;
  std::size_t n_points = 0;
  /// alpha >= -nu - 1, the range in which the increase is claimed.
  bool within_hypothesis = false;
  bool increasing = false;
  std::size_t violations = 0;
  double first_violation = 0.0;
};

/// Samples log-spaced in [1e-6, 1 - 1e-6]; reports rather than asserts, so
/// values of alpha outside the hypothesis can be explored.
inline MonotonicityResult lemma_monotonicity_check(double nu, double alpha, std::size_t n_points = 1000) {
  const int k = detail::degree_index(nu);
  if (n_points < 2) throw PreconditionError("lemma_monotonicity_check: need at least 2 points");
  MonotonicityResult r;
  r.nu = nu;
  r.alpha = alpha;
  r.n_points = n_points;
  r.within_hypothesis = alpha >= -nu - 1.0;
  const double lo = std::log(1e-6);
  const double hi = std::log1p(-1e-6);
  double prev = 0.0;
  for (std::size_t i = 0; i < n_points; ++i) {
    const double p = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1));
    const double v =
        std::pow(p, alpha) * specfun::legendre_q_half_direct(k, specfun::QArgument::from_momenta(p, 1.0));
    if (i > 0 && !(v > prev)) {
      if (r.violations == 0) r.first_violation = p;
      ++r.violations;
    }
    prev = v;
  }
  r.increasing = r.violations == 0;
  return r;
}

// ---------------------------------------------------------------------------
// Window estimate

struct WindowEstimate {
  TrialWindow window;
  double nu = 0.0;
  double i_nu = 0.0;
  /// int_a^b int_a^b Q_nu((p/p' + p'/p)/2) dp dp' / (p p').
  double window_integral = 0.0;
  /// int_a^b (1/p) int_0^a and int_a^b (1/p) int_b^inf of the same integrand.
  double tail_low = 0.0;
  double tail_high = 0.0;
  /// I_nu log(b/a) - 2 I_nu.
  double lower_bound = 0.0;
  /// |window - (I_nu log(b/a) - tail_low - tail_high)| / I_nu.
  double decomposition_defect = 0.0;
  bool tails_bounded = false;
  bool inequality_holds = false;
};

/// The window integral in log coordinates: the kernel depends only on
/// s - s', so it reduces to 2 int_0^L (L - sigma) Q_nu(cosh sigma) dsigma.
/// The tails use separate nested quadratures, giving an independent route
/// through the decomposition window = I_nu log(b/a) - tails.
inline WindowEstimate window_tail_bounds(const TrialWindow& w, double nu, double tol = 1e-10) {
  validate(w);
  const int k = detail::degree_index(nu);
  const auto opt = detail::tight(tol);
  const double len = std::log(w.b / w.a);
  WindowEstimate r;
  r.window = w;
  r.nu = nu;
  r.i_nu = i_nu_closed(nu);

  auto conv = [&](double sigma) { return sigma > 0.0 ? (len - sigma) * detail::q_cosh(k, sigma) : 0.0; };
  r.window_integral = 2.0 * quad::integrate_adaptive(conv, 0.0, len, opt).value;

  // Inner integrals in u = p'/p.
  auto outer_low = [&](double s) {
    const double p = w.a * std::exp(s);
    return quad::integrate_adaptive([&](double u) { return detail::scaled_q(k, u); }, 0.0, w.a / p, opt).value;
  };
  auto outer_high = [&](double s) {
    const double p = w.a * std::exp(s);
    return quad::integrate_half_line([&](double u) { return detail::scaled_q(k, u); }, w.b / p, opt).value;
  };
  r.tail_low = quad::integrate_adaptive(outer_low, 0.0, len, opt).value;
  r.tail_high = quad::integrate_adaptive(outer_high, 0.0, len, opt).value;
  r.lower_bound = r.i_nu * (len - 2.0);
  r.decomposition_defect = std::abs(r.window_integral - (r.i_nu * len - r.tail_low - r.tail_high)) / r.i_nu;
  r.tails_bounded = r.tail_low <= r.i_nu + 1e-8 && r.tail_high <= r.i_nu + 1e-8;
  r.inequality_holds = r.window_integral >= r.lower_bound - 1e-8 * r.i_nu;
  return r;
}

/// Random windows 1 < a < b <= b_max, log-uniform, for both nu.
inline std::vector<WindowEstimate> random_window_checks(std::size_t count = 20, double b_max = 1e4,
                                                        unsigned seed = 11) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double top = std::log(b_max);
  std::vector<WindowEstimate> out;
  for (std::size_t i = 0; i < count; ++i) {
    double la = top * unit(rng);
    double lb = top * unit(rng);
    if (la > lb) std::swap(la, lb);
    if (lb - la < 1e-3) lb = std::min(top, la + 1e-3);
    const TrialWindow w{std::max(std::exp(la), 1.0 + 1e-9), std::exp(lb)};
    if (!(w.b > w.a)) continue;
    for (double nu : {-0.5, 0.5}) out.push_back(window_tail_bounds(w, nu));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trial form values

struct DivergenceRow {
  double a = 0.0;
  double b = 0.0;
  double delta = 0.0;
  double form_value = 0.0;
  double norm_sq = 0.0;
  double log_ratio = 0.0;
  double kinetic = 0.0;
  /// int int chi(p) chi(p') K_0(p, p') dp dp' / (p p').
  double potential = 0.0;
};

/// Antiderivative of e(p)/p^2.
inline double kinetic_antiderivative(double p) { return -energy(p) / p + std::asinh(p); }

/// min over the window of beta2; equals (1 - 1/e(a))/2 >= 1/2 - 1/a.
inline double beta2_window_minimum(const TrialWindow& w) {
  validate(w);
  return beta_weights(w.a, w.a).beta2;
}

/// <f, b_0 f> for f = chi_(a,b)/p, from the continuous form. Kinetic part in
/// closed form; the potential double integral in s = log(p/a), where the
/// diagonal singularity of K_0 is -log|s - s'| plus a continuous remainder
/// (beta1 + beta2 = 1 on the diagonal). The log is integrated exactly.
inline DivergenceRow trial_form_value(const TrialWindow& w, double delta, double tol = 1e-9) {
  validate(w);
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw PreconditionError("trial_form_value: delta must be >= 0");
  DivergenceRow r;
  r.a = w.a;
  r.b = w.b;
  r.delta = delta;
  r.log_ratio = std::log(w.b / w.a);
  r.norm_sq = 1.0 / w.a - 1.0 / w.b;
  r.kinetic = kinetic_antiderivative(w.b) - kinetic_antiderivative(w.a);

  if (delta > 0.0) {
    const Channel ch{0};
    quad::AdaptiveOptions inner_opt = detail::tight(0.1 * tol);
    quad::AdaptiveOptions outer_opt = detail::tight(tol);
    auto inner = [&](double s) {
      if (s <= 0.0) return 0.0;
      const double p = w.a * std::exp(s);
      auto remainder = [&](double u) {
        if (u >= s) return 0.0;
        return channel_kernel(ch, p, w.a * std::exp(u)) + std::log(s - u);
      };
      const double smooth = quad::integrate_adaptive(remainder, 0.0, s, inner_opt).value;
      return smooth - (s * std::log(s) - s);
    };
    r.potential = 2.0 * quad::integrate_adaptive(inner, 0.0, r.log_ratio, outer_opt).value;
  }
  r.form_value = r.kinetic - delta / std::numbers::pi * r.potential;
  return r;
}

/// Smallest a for which 1 - (delta/delta_c)(1 - 2/a) < 0; infinite for delta <= delta_c.
inline double qualifying_a(double delta, double delta_c = cert::critical_coupling().delta_c) {
  if (!(delta > delta_c)) return std::numeric_limits<double>::infinity();
  return 2.0 / (1.0 - delta_c / delta);
}

/// Leading coefficient 1 - (delta/delta_c)(1 - 2/a) of log(b/a) in the upper bound.
inline double predicted_slope(double delta, double a, double delta_c = cert::critical_coupling().delta_c) {
  return 1.0 - (delta / delta_c) * (1.0 - 2.0 / a);
}

struct DivergenceDemo {
  double delta = 0.0;
  double a = 0.0;
  std::vector<DivergenceRow> rows;
  /// Least-squares slope of form_value against log(b/a).
  double slope = 0.0;
  double predicted_slope = 0.0;
  bool strictly_decreasing = false;
  bool norms_bounded = false;
  bool all_negative = false;
};

inline double fitted_slope(const std::vector<DivergenceRow>& rows) {
  if (rows.size() < 2) return 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (const auto& r : rows) {
    mx += r.log_ratio;
    my += r.form_value;
  }
  mx /= static_cast<double>(rows.size());
  my /= static_cast<double>(rows.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& r : rows) {
    sxy += (r.log_ratio - mx) * (r.form_value - my);
    sxx += (r.log_ratio - mx) * (r.log_ratio - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

/// Rows for increasing b at fixed a. Requires delta > delta_c and a above
/// qualifying_a(delta); rows are computed independently.
inline DivergenceDemo divergence_demo(double delta, double a, std::vector<double> b_list, unsigned threads = 1) {
  const double dc = cert::critical_coupling().delta_c;
  if (!(delta > dc)) {
    std::ostringstream msg;
    msg << "divergence_demo: delta = " << delta << " does not exceed delta_c = " << dc
        << "; the construction needs delta > delta_c";
    throw PreconditionError(msg.str());
  }
  if (!(predicted_slope(delta, a, dc) < 0.0)) {
    std::ostringstream msg;
    msg << "divergence_demo: a = " << a << " too small for delta = " << delta
        << "; need 1 - (delta/delta_c)(1 - 2/a) < 0, i.e. a > " << qualifying_a(delta, dc);
    throw PreconditionError(msg.str());
  }
  if (b_list.empty()) throw PreconditionError("divergence_demo: empty b list");
  std::sort(b_list.begin(), b_list.end());
  DivergenceDemo d;
  d.delta = delta;
  d.a = a;
  d.predicted_slope = predicted_slope(delta, a, dc);
  d.rows.resize(b_list.size());
  br2d::detail::parallel_rows(b_list.size(), threads,
                              [&](std::size_t i) { d.rows[i] = trial_form_value({a, b_list[i]}, delta); });
  d.slope = fitted_slope(d.rows);
  d.strictly_decreasing = true;
  d.norms_bounded = true;
  d.all_negative = true;
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    if (i > 0 && !(d.rows[i].form_value < d.rows[i - 1].form_value)) d.strictly_decreasing = false;
    if (!(d.rows[i].norm_sq <= 1.0 / a)) d.norms_bounded = false;
    if (!(d.rows[i].form_value < 0.0)) d.all_negative = false;
  }
  return d;
}

}  // namespace br2d::unbounded
