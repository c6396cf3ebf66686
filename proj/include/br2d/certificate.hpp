#pragma once

// Checkable steps of the positivity argument for the k = 0 channel form:
// the critical coupling, the convex-combination reduction to it, the trial
// functions and their two-way transforms, the pointwise energy bound, the
// function f on (0,1] in two representations, the power-series monotonicity
// and truncation estimates, and the two polynomial regime certificates.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "br2d/error.hpp"
#include "br2d/integrate.hpp"
#include "br2d/kernel.hpp"
#include "br2d/spectral.hpp"
#include "br2d/specfun.hpp"

namespace br2d::cert {

struct CriticalCoupling {
  double delta_c = 0.0;
  /// 1 - 2 delta_c.
  double floor = 0.0;
};

/// delta_c = (Gamma(1/4)^4/(8 pi^2) + 8 pi^2/Gamma(1/4)^4)^{-1}.
inline CriticalCoupling critical_coupling() {
  const double g = specfun::gamma(0.25);
  const double g4 = g * g * g * g;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double dc = 1.0 / (g4 / (8.0 * pi2) + 8.0 * pi2 / g4);
  return {dc, 1.0 - 2.0 * dc};
}

struct CertificateCheck {
  std::string name;
  double value = 0.0;
  bool pass = false;
  std::string detail;
};

struct CertificateReport {
  std::string name;
  std::vector<double> coefficients;
  std::vector<std::string> signs;
  double min_value = 0.0;
  double domain_lo = 0.0;
  double domain_hi = 0.0;
  bool pass = false;
  std::vector<CertificateCheck> checks;
  std::vector<std::string> notes;

  void add(std::string check_name, double value, bool ok, std::string detail = {}) {
    checks.push_back({std::move(check_name), value, ok, std::move(detail)});
  }
  /// pass is the conjunction of every recorded check.
  void finalize() {
    pass = !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const CertificateCheck& c) { return c.pass; });
  }
};

inline std::string sign_of(double v) { return v > 0 ? "+" : (v < 0 ? "-" : "0"); }

// ---------------------------------------------------------------------------
// Reduction to the critical coupling

struct ScalingReductionResult {
  /// max |b_delta(g) - [(1 - delta/delta_c) T(g) + (delta/delta_c) b_c(g)]| / scale
  double identity_defect = 0.0;
  /// max of (1 - delta/delta_c)|g|^2 + (delta/delta_c) b_c(g) - b_delta(g), relative; the
  /// kinetic step T(g) >= |g|^2 makes this nonpositive.
  double inequality_violation = 0.0;
  std::size_t samples = 0;
};

/// Checks on random vectors that the form at delta is the convex combination
/// of the kinetic form and the form at delta_c, and that the chain ending in
/// (1 - delta/delta_c)|g|^2 + (delta/delta_c) <g, b_c g> holds.
inline ScalingReductionResult scaling_reduction_check(double delta, const ChannelForm& at_delta,
                                                      const ChannelForm& at_critical, std::size_t samples = 100,
                                                      unsigned seed = 7) {
  const double dc = at_critical.delta;
  if (!(delta >= 0.0 && delta <= dc)) throw PreconditionError("scaling_reduction_check: need 0 <= delta <= delta_c");
  if (at_delta.matrix.size() != at_critical.matrix.size() || at_delta.grid != at_critical.grid) {
    throw PreconditionError("scaling_reduction_check: forms must share a grid");
  }
  if (std::abs(at_delta.delta - delta) > 1e-15 * std::max(1.0, delta)) {
    throw PreconditionError("scaling_reduction_check: form coupling does not match delta");
  }
  const std::size_t n = at_delta.matrix.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const double t = delta / dc;
  ScalingReductionResult out;
  out.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> g(n);
    for (double& x : g) x = normal(rng);
    double kinetic = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      kinetic += energy(at_delta.grid->nodes[i]) * g[i] * g[i];
      norm += g[i] * g[i];
    }
    const double lhs = form_value(at_delta, g);
    const double crit = form_value(at_critical, g);
    const double rhs = (1.0 - t) * kinetic + t * crit;
    const double scale = std::max({std::abs(lhs), std::abs(kinetic), std::abs(crit), 1.0});
    out.identity_defect = std::max(out.identity_defect, std::abs(lhs - rhs) / scale);
    const double chain = (1.0 - t) * norm + t * crit;
    out.inequality_violation = std::max(out.inequality_violation, (chain - lhs) / scale);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trial functions and the two evaluations of their Coulomb transform

namespace detail {

inline void require_channel01(int k, const char* what) {
  if (k != 0 && k != 1) throw PreconditionError(std::string(what) + ": k must be 0 or 1");
}

inline void require_positive_momentum(double p, const char* what) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError(std::string(what) + ": p must be positive");
}

}  // namespace detail

/// h_k(p) = sqrt(p) (p^2+1)^{-3/4} Gamma(k + 3/2) P^{-k}_{1/2}((p^2+1)^{-1/2}).
inline double trial_h(int k, double p) {
  detail::require_channel01(k, "trial_h");
  detail::require_positive_momentum(p, "trial_h");
  const double e = energy(p);
  const double x = 1.0 / e;
  const double one_minus_x = p * p / (e * (e + 1.0));
  return std::sqrt(p) * std::pow(e, -1.5) * specfun::gamma(k + 1.5) *
         specfun::legendre_p(-k, specfun::plus_half, x, one_minus_x);
}

/// Closed form I_k(p) = pi sqrt(p) (p^2+1)^{-1/4} Gamma(k + 1/2) P^{-k}_{-1/2}((p^2+1)^{-1/2}).
inline double i_k_closed(int k, double p) {
  detail::require_channel01(k, "i_k_closed");
  detail::require_positive_momentum(p, "i_k_closed");
  const double e = energy(p);
  const double x = 1.0 / e;
  const double one_minus_x = p * p / (e * (e + 1.0));
  return std::numbers::pi * std::sqrt(p) * std::pow(e, -0.5) * specfun::gamma(k + 0.5) *
         specfun::legendre_p(-k, specfun::minus_half, x, one_minus_x);
}

/// I_k(p) = int_0^inf h_k(p') Q_{k-1/2}((p/p' + p'/p)/2) dp', split at p' = p.
inline quad::QuadratureResult i_k_quadrature(int k, double p, double tol = 1e-10) {
  detail::require_channel01(k, "i_k_quadrature");
  detail::require_positive_momentum(p, "i_k_quadrature");
  auto integrand = [&](double q) {
    if (q <= 0.0 || q == p) return 0.0;
    return trial_h(k, q) * specfun::legendre_q_half_direct(k, specfun::QArgument::from_momenta(p, q));
  };
  quad::AdaptiveOptions opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = tol;
  opt.max_intervals = 20000;
  const quad::QuadratureResult left = quad::integrate_adaptive(integrand, 0.0, p, opt);
  const quad::QuadratureResult right =
      quad::integrate_half_line([&](double q) { return q == p ? 0.0 : integrand(q); }, p, opt, p);
  return {left.value + right.value, left.error_estimate + right.error_estimate,
          left.evaluations + right.evaluations};
}

/// Pointwise bound E(p) = e - (delta/(2 pi)) ((1 + 1/e) I_0/h_0 + (1 - 1/e) I_1/h_1), built from
/// the closed-form transforms; E(0) = 1 - 2 delta is the analytic limit.
inline double energy_bound(double p, double delta) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("energy_bound: p must be >= 0");
  if (p == 0.0) return 1.0 - 2.0 * delta;
  const double e = energy(p);
  const double one_minus_inv_e = p * p / (e * (e + 1.0));
  const double r0 = i_k_closed(0, p) / trial_h(0, p);
  const double r1 = i_k_closed(1, p) / trial_h(1, p);
  return e - delta / (2.0 * std::numbers::pi) * ((1.0 + 1.0 / e) * r0 + one_minus_inv_e * r1);
}

// ---------------------------------------------------------------------------
// The function f on (0, 1]

enum class Representation { legendre, hypergeometric };

inline std::string to_string(Representation r) {
  return r == Representation::legendre ? "legendre" : "hypergeometric";
}

/// f(x) = 1/x - delta ((1/x + 1) P_{-1/2}/P_{1/2} + (1/x - 1)(1/3) P^{-1}_{-1/2}/P^{-1}_{1/2}).
/// The legendre representation evaluates P through complete elliptic
/// integrals; the hypergeometric one through the Gauss series at (1-x)/2.
inline double f_of_x(double x, Representation rep, double delta) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("f_of_x: x must lie in (0, 1]");
  const double u = 0.5 * (1.0 - x);
  double r0 = 0.0;
  double r1 = 0.0;
  if (rep == Representation::hypergeometric) {
    r0 = specfun::hyp2f1(0.5, 0.5, 1.0, u) / specfun::hyp2f1(-0.5, 1.5, 1.0, u);
    // The common factor ((1-x)/(1+x))^{1/2} of the order -1 functions cancels.
    r1 = specfun::hyp2f1(0.5, 0.5, 2.0, u) / specfun::hyp2f1(-0.5, 1.5, 2.0, u);
  } else {
    r0 = specfun::legendre_p_elliptic(0, specfun::minus_half, x) /
         specfun::legendre_p_elliptic(0, specfun::plus_half, x);
    r1 = x < 1.0 ? specfun::legendre_p_elliptic(-1, specfun::minus_half, x) /
                       specfun::legendre_p_elliptic(-1, specfun::plus_half, x)
                 : 1.0;
  }
  const double inv = 1.0 / x;
  return inv - delta * ((inv + 1.0) * r0 + (inv - 1.0) / 3.0 * r1);
}

inline double f_of_x(double x, Representation rep) { return f_of_x(x, rep, critical_coupling().delta_c); }

struct Infimum {
  double argmin = 0.0;
  double value = 0.0;
  std::size_t grid_points = 0;
};

/// Dense scan of f on x_i = i/N, i = 1..N, then golden-section refinement on
/// the bracket around the best sample.
inline Infimum f_infimum(std::size_t grid_points = 10000, Representation rep = Representation::hypergeometric,
                         double delta = critical_coupling().delta_c) {
  if (grid_points < 3) throw PreconditionError("f_infimum: need at least 3 grid points");
  std::size_t best = 1;
  double best_value = std::numeric_limits<double>::infinity();
  const double nn = static_cast<double>(grid_points);
  for (std::size_t i = 1; i <= grid_points; ++i) {
    const double v = f_of_x(static_cast<double>(i) / nn, rep, delta);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = static_cast<double>(best - 1) / nn;
  double hi = std::min(1.0, static_cast<double>(best + 1) / nn);
  lo = std::max(lo, 0.5 / nn);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - ratio * (hi - lo);
  double b = lo + ratio * (hi - lo);
  double fa = f_of_x(a, rep, delta);
  double fb = f_of_x(b, rep, delta);
  for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - ratio * (hi - lo);
      fa = f_of_x(a, rep, delta);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + ratio * (hi - lo);
      fb = f_of_x(b, rep, delta);
    }
  }
  Infimum out{static_cast<double>(best) / nn, best_value, grid_points};
  for (double x : {a, b, hi}) {
    const double v = f_of_x(x, rep, delta);
    if (v < out.value) out = {x, v, grid_points};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Power series at x = 0 of the four Legendre functions

enum class SeriesId { p_minus_half, p_plus_half, p1_minus_half, p1_plus_half };

inline std::string to_string(SeriesId id) {
  switch (id) {
    case SeriesId::p_minus_half: return "P_{-1/2}";
    case SeriesId::p_plus_half: return "P_{1/2}";
    case SeriesId::p1_minus_half: return "sqrt(1-x^2) P^{-1}_{-1/2}";
    case SeriesId::p1_plus_half: return "sqrt(1-x^2) P^{-1}_{1/2}";
  }
  return "?";
}

inline constexpr std::array<SeriesId, 4> all_series = {SeriesId::p_minus_half, SeriesId::p_plus_half,
                                                       SeriesId::p1_minus_half, SeriesId::p1_plus_half};

namespace detail {

// Gamma at the quarter points the series need, including -1/4 and -3/4.
inline double gamma_quarter(double x) { return x > 0 ? specfun::gamma(x) : specfun::gamma(x + 1.0) / x; }

// Each half of a series is sign * Gamma(alpha+k) Gamma(beta+k) / (Gamma(gamma+k) k!).
struct HalfSeries {
  double sign;
  double alpha;
  double beta;
  double gamma;
};

struct SeriesShape {
  double prefactor;
  HalfSeries even;
  HalfSeries odd;
};

inline SeriesShape series_shape(SeriesId id) {
  const double two_pi = 2.0 * std::numbers::pi;
  switch (id) {
    case SeriesId::p_minus_half:
      return {1.0 / two_pi, {1.0, 0.25, 0.25, 0.5}, {-1.0, 0.75, 0.75, 1.5}};
    case SeriesId::p_plus_half:
      return {1.0 / two_pi, {-1.0, 0.75, -0.25, 0.5}, {1.0, 0.25, 1.25, 1.5}};
    case SeriesId::p1_minus_half:
      return {1.0 / (2.0 * two_pi), {1.0, -0.25, -0.25, 0.5}, {-1.0, 0.25, 0.25, 1.5}};
    case SeriesId::p1_plus_half:
      return {1.0 / (2.0 * two_pi), {-1.0, 0.25, -0.75, 0.5}, {1.0, 0.75, -0.25, 1.5}};
  }
  throw PreconditionError("series_shape: unknown series");
}

inline std::vector<double> half_series_terms(const HalfSeries& h, std::size_t count) {
  std::vector<double> t(count);
  double v = h.sign * gamma_quarter(h.alpha) * gamma_quarter(h.beta) / specfun::gamma(h.gamma);
  for (std::size_t k = 0; k < count; ++k) {
    t[k] = v;
    const double kk = static_cast<double>(k);
    v *= (h.alpha + kk) * (h.beta + kk) / ((h.gamma + kk) * (kk + 1.0));
  }
  return t;
}

}  // namespace detail

/// Coefficients a_0 .. a_{count-1} of the power series in x.
inline std::vector<double> series_coefficients(SeriesId id, std::size_t count) {
  const detail::SeriesShape s = detail::series_shape(id);
  const std::vector<double> even = detail::half_series_terms(s.even, count / 2 + 1);
  const std::vector<double> odd = detail::half_series_terms(s.odd, count / 2 + 1);
  std::vector<double> a(count);
  for (std::size_t n = 0; n < count; ++n) a[n] = s.prefactor * (n % 2 == 0 ? even[n / 2] : odd[n / 2]);
  return a;
}

/// The function the series represents, evaluated through the hypergeometric route.
inline double series_target(SeriesId id, double x) {
  switch (id) {
    case SeriesId::p_minus_half: return specfun::legendre_p(0, specfun::minus_half, x);
    case SeriesId::p_plus_half: return specfun::legendre_p(0, specfun::plus_half, x);
    case SeriesId::p1_minus_half:
      return std::sqrt((1.0 - x) * (1.0 + x)) * specfun::legendre_p(-1, specfun::minus_half, x);
    case SeriesId::p1_plus_half:
      return std::sqrt((1.0 - x) * (1.0 + x)) * specfun::legendre_p(-1, specfun::plus_half, x);
  }
  return 0.0;
}

/// Sign alternation from a_2 on and the ratio bounds
/// |a_{2k}/a_{2k+1}| >= (k+1/2)/(k+1/4), |a_{2k+1}/a_{2k+2}| >= (k+1)/(k+3/4), 1 <= k <= k_max.
inline CertificateReport series_monotonicity_check(SeriesId id, int k_max = 50) {
  if (k_max < 3) throw PreconditionError("series_monotonicity_check: k_max must be at least 3");
  const std::vector<double> a = series_coefficients(id, static_cast<std::size_t>(2 * k_max + 3));
  CertificateReport r;
  r.name = "series_monotonicity " + to_string(id);
  r.coefficients.assign(a.begin(), a.begin() + 6);
  for (double c : r.coefficients) r.signs.push_back(sign_of(c));
  r.domain_lo = 1;
  r.domain_hi = k_max;
  bool alternates = true;
  for (std::size_t n = 2; n + 1 < a.size(); ++n) alternates = alternates && a[n] * a[n + 1] < 0.0;
  r.add("alternation from a_2", 0.0, alternates);
  double worst_even = std::numeric_limits<double>::infinity();
  double worst_odd = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= k_max; ++k) {
    const double kk = k;
    const double even_ratio = std::abs(a[2 * k] / a[2 * k + 1]);
    const double odd_ratio = std::abs(a[2 * k + 1] / a[2 * k + 2]);
    worst_even = std::min(worst_even, even_ratio - (kk + 0.5) / (kk + 0.25));
    worst_odd = std::min(worst_odd, odd_ratio - (kk + 1.0) / (kk + 0.75));
  }
  r.add("min |a_2k/a_2k+1| - (k+1/2)/(k+1/4)", worst_even, worst_even >= 0.0);
  r.add("min |a_2k+1/a_2k+2| - (k+1)/(k+3/4)", worst_odd, worst_odd >= 0.0);
  r.min_value = std::min(worst_even, worst_odd);
  // The series must represent the function it claims to.
  double worst_sum = 0.0;
  const std::vector<double> many = series_coefficients(id, 400);
  for (double x : {0.1, 0.3, 0.5}) {
    double s = 0.0;
    double xn = 1.0;
    for (double c : many) {
      s += c * xn;
      xn *= x;
    }
    worst_sum = std::max(worst_sum, std::abs(s - series_target(id, x)) / std::abs(series_target(id, x)));
  }
  r.add("series sum vs hypergeometric value at x in {0.1,0.3,0.5}", worst_sum, worst_sum <= 1e-12);
  r.finalize();
  return r;
}

/// Upper (sign = +1) or lower (sign = -1) quadratic bound obtained by
/// truncating after a_2; `upper` tells which way the bound goes.
struct TruncatedBound {
  SeriesId id;
  std::array<double, 3> poly;
  bool upper;
};

/// The four bounds of the form a_0 + a_1 x + a_2 x^2: upper for the
/// functions in the numerators of f (P_{-1/2}, P^{-1}_{-1/2}), lower for the
/// denominators.
inline std::array<TruncatedBound, 4> truncated_bounds() {
  std::array<TruncatedBound, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    const std::vector<double> a = series_coefficients(all_series[i], 3);
    out[i] = {all_series[i], {a[0], a[1], a[2]}, i % 2 == 0};
  }
  return out;
}

/// The same four bounds written in closed form with G = Gamma(1/4)^2.
inline std::array<TruncatedBound, 4> truncated_bounds_closed_form() {
  const double g = specfun::gamma(0.25);
  const double gg = g * g;
  const double pi = std::numbers::pi;
  const double sp = std::sqrt(pi);
  const double p32 = pi * sp;
  const double c2 = 1.0 / (2.0 * pi);
  const double c4 = 1.0 / (4.0 * pi);
  return {{{SeriesId::p_minus_half, {c2 * gg / sp, -c2 * 4.0 * p32 / gg, c2 * gg / (8.0 * sp)}, true},
           {SeriesId::p_plus_half, {c2 * 8.0 * p32 / gg, c2 * gg / (2.0 * sp), -c2 * 3.0 * p32 / gg}, false},
           {SeriesId::p1_minus_half, {c4 * 32.0 * p32 / gg, -c4 * 2.0 * gg / sp, c4 * 4.0 * p32 / gg}, true},
           {SeriesId::p1_plus_half, {c4 * 4.0 * gg / (3.0 * sp), -c4 * 16.0 * p32 / gg, -c4 * gg / (2.0 * sp)},
            false}}};
}

inline double eval_poly(const std::array<double, 3>& c, double x) { return c[0] + x * (c[1] + x * c[2]); }

/// Each truncated bound holds against the function and is positive on (0, 0.4].
inline CertificateReport truncated_series_bounds_check(std::size_t points = 4000) {
  CertificateReport r;
  r.name = "truncated_series_bounds";
  r.domain_lo = 0.0;
  r.domain_hi = 0.4;
  const auto bounds = truncated_bounds();
  const auto closed = truncated_bounds_closed_form();
  double worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < 4; ++b) {
    const TruncatedBound& tb = bounds[b];
    double closed_dev = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      closed_dev = std::max(closed_dev, std::abs(tb.poly[j] - closed[b].poly[j]) / std::abs(closed[b].poly[j]));
      r.coefficients.push_back(tb.poly[j]);
      r.signs.push_back(sign_of(tb.poly[j]));
    }
    r.add(to_string(tb.id) + " coefficients match closed form", closed_dev, closed_dev <= 1e-13);
    double margin = std::numeric_limits<double>::infinity();
    double min_rhs = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= points; ++i) {
      const double x = 0.4 * static_cast<double>(i) / static_cast<double>(points);
      const double rhs = eval_poly(tb.poly, x);
      const double lhs = series_target(tb.id, x);
      margin = std::min(margin, tb.upper ? rhs - lhs : lhs - rhs);
      min_rhs = std::min(min_rhs, rhs);
    }
    // At x -> 0 the bound is an equality; allow roundoff there.
    r.add(to_string(tb.id) + (tb.upper ? " <= bound" : " >= bound"), margin, margin >= -1e-14);
    r.add(to_string(tb.id) + " bound positive on (0,0.4]", min_rhs, min_rhs > 0.0);
    worst_margin = std::min(worst_margin, margin);
  }
  r.min_value = worst_margin;
  r.finalize();
  return r;
}

/// Coefficient c_k of the Gauss series of F(-nu, nu+1; 1-mu; (1-x)/2) in powers of (1-x).
inline double expansion_coefficient(double nu, int mu, int k) {
  return specfun::pochhammer(-nu, k) * specfun::pochhammer(nu + 1.0, k) /
         (specfun::pochhammer(1.0 - mu, k) * specfun::pochhammer(1.0, k) * std::pow(2.0, k));
}

struct TailEstimate {
  double nu = 0.0;
  int mu = 0;
  double x = 0.0;
  double tail = 0.0;          // |sum_{k>=3} c_k (1-x)^k| from 200 terms
  double doubled_third = 0.0;  // 2 |c_3| (1-x)^3
  double second = 0.0;        // |c_2| (1-x)^2
  bool pass = false;
};

/// |sum_{k>=3} c_k (1-x)^k| <= 2 |c_3| (1-x)^3 <= |c_2| (1-x)^2.
inline TailEstimate expansion_tail_check(double nu, int mu, double x) {
  TailEstimate t{nu, mu, x};
  const double u = 1.0 - x;
  // Term recurrence avoids overflowing Pochhammer products at large k.
  double term = expansion_coefficient(nu, mu, 3) * u * u * u;
  double s = 0.0;
  for (int k = 3; k < 203; ++k) {
    s += term;
    term *= (-nu + k) * (nu + 1.0 + k) / ((1.0 - mu + k) * (k + 1.0) * 2.0) * u;
  }
  t.tail = std::abs(s);
  t.doubled_third = 2.0 * std::abs(expansion_coefficient(nu, mu, 3)) * u * u * u;
  t.second = std::abs(expansion_coefficient(nu, mu, 2)) * u * u;
  t.pass = t.tail <= t.doubled_third && t.doubled_third <= t.second;
  return t;
}

// ---------------------------------------------------------------------------
// Regime x >= 0.4

struct HighRegimeCoefficients {
  std::array<double, 5> c;  // multiplying (1-x)^1 .. (1-x)^5
};

inline HighRegimeCoefficients high_regime_coefficients(double dc) {
  return {{49152.0 - 114688.0 * dc, -27648.0 + 48128.0 * dc, -4224.0 + 16128.0 * dc, 1800.0 - 3504.0 * dc,
           225.0 - 540.0 * dc}};
}

/// Bound on f(x) - (1 - 2 delta_c) from the two-term truncations of the Gauss
/// series plus tail estimates, before any algebraic simplification.
inline double high_regime_pre_reduction(double x, double dc) {
  const double u = 1.0 - x;
  const double r0 = (1.0 + u / 8.0 + 9.0 * u * u / 128.0) / (1.0 - 3.0 * u / 8.0 - 15.0 * u * u / 128.0);
  const double r1 = (1.0 + u / 16.0 + 3.0 * u * u / 128.0) / (1.0 - 3.0 * u / 16.0 - 5.0 * u * u / 128.0);
  const double inv = 1.0 / x;
  return inv - dc * ((inv + 1.0) * r0 + (inv - 1.0) / 3.0 * r1) - (1.0 - 2.0 * dc);
}

/// The same bound as a single rational function.
inline double high_regime_rational(double x, double dc) {
  const HighRegimeCoefficients hc = high_regime_coefficients(dc);
  const double u = 1.0 - x;
  double num = 0.0;
  double un = u;
  for (double c : hc.c) {
    num += c * un;
    un *= u;
  }
  const double den = 3.0 * x * (128.0 - 48.0 * u - 15.0 * u * u) * (128.0 - 24.0 * u - 5.0 * u * u);
  return num / den;
}

inline CertificateReport certify_high_regime(std::size_t points = 10000) {
  const double dc = critical_coupling().delta_c;
  const HighRegimeCoefficients hc = high_regime_coefficients(dc);
  CertificateReport r;
  r.name = "high_regime";
  r.domain_lo = 0.4;
  r.domain_hi = 1.0;
  r.coefficients.assign(hc.c.begin(), hc.c.end());
  for (double c : hc.c) r.signs.push_back(sign_of(c));
  r.add("c3 = -4224 + 16128 delta_c > 0", hc.c[2], hc.c[2] > 0);
  r.add("c4 = 1800 - 3504 delta_c > 0", hc.c[3], hc.c[3] > 0);
  r.add("c5 = 225 - 540 delta_c > 0", hc.c[4], hc.c[4] > 0);
  // Linear in x, so the endpoints decide.
  const double at_04 = hc.c[0] + hc.c[1] * 0.6;
  const double at_1 = hc.c[0];
  r.add("c1 + c2 (1-x) at x = 0.4", at_04, at_04 >= 0);
  r.add("c1 + c2 (1-x) at x = 1", at_1, at_1 >= 0);
  double min_den = std::numeric_limits<double>::infinity();
  double min_bound = std::numeric_limits<double>::infinity();
  double min_gap = std::numeric_limits<double>::infinity();
  double worst_linear = std::numeric_limits<double>::infinity();
  const double floor = 1.0 - 2.0 * dc;
  for (std::size_t i = 0; i <= points; ++i) {
    const double x = 0.4 + 0.6 * static_cast<double>(i) / static_cast<double>(points);
    const double u = 1.0 - x;
    min_den = std::min(min_den, 3.0 * x * (128.0 - 48.0 * u - 15.0 * u * u) * (128.0 - 24.0 * u - 5.0 * u * u));
    worst_linear = std::min(worst_linear, hc.c[0] + hc.c[1] * u);
    const double bound = high_regime_rational(x, dc);
    min_bound = std::min(min_bound, bound);
    const double fx = f_of_x(x, Representation::hypergeometric, dc) - floor;
    min_gap = std::min(min_gap, fx - bound);
  }
  r.add("linear condition on dense grid", worst_linear, worst_linear >= 0);
  r.add("denominator positive", min_den, min_den > 0);
  r.add("rational bound >= 0 on [0.4, 1]", min_bound, min_bound >= 0);
  // Both sides vanish at x = 1, so allow roundoff there.
  r.add("f - (1 - 2 delta_c) >= rational bound", min_gap, min_gap >= -1e-12);
  r.min_value = min_bound;
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------
// Regime x <= 0.4

struct LowRegimeCoefficients {
  std::array<double, 5> b;
  /// sum |terms| / |sum| for each b_n: the cancellation the sign relies on.
  std::array<double, 5> condition;
};

namespace detail {

// Neumaier-compensated long double sum.
inline long double compensated_sum(const std::vector<long double>& terms) {
  long double s = 0.0L;
  long double c = 0.0L;
  for (long double t : terms) {
    const long double u = s + t;
    c += (std::fabs(s) >= std::fabs(t)) ? (s - u) + t : (t - u) + s;
    s = u;
  }
  return s + c;
}

}  // namespace detail

/// b_0..b_4 as polynomials in G = Gamma(1/4)^4 and pi^2, summed in extended
/// precision with compensation.
inline LowRegimeCoefficients low_regime_coefficients() {
  // Gamma(1/4) enters with double accuracy; the condition numbers say how
  // far that error can move each b_n.
  const long double g = static_cast<long double>(specfun::gamma(0.25));
  const long double G = g * g * g * g;
  const long double pi2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;
  const long double G2 = G * G;
  const long double G3 = G2 * G;
  const long double G4 = G3 * G;
  const long double p4 = pi2 * pi2;
  const long double p6 = p4 * pi2;
  const long double p8 = p4 * p4;
  const std::array<std::vector<long double>, 5> terms = {{
      {8 * G4, -256 * G3 * pi2, 3072 * G2 * p4, -98304 * p8},
      {-8 * G4, 3072 * G2 * p4, -40960 * G * p6, 98304 * p8},
      {-3 * G4, 192 * G3 * pi2, -2944 * G2 * p4, 4096 * G * p6, 36864 * p8},
      {3 * G4, -24 * G3 * pi2, -128 * G2 * p4, 10752 * G * p6, -36864 * p8},
      {-12 * G3 * pi2, 288 * G2 * p4, -1536 * G * p6},
  }};
  LowRegimeCoefficients out{};
  for (std::size_t n = 0; n < 5; ++n) {
    const long double s = detail::compensated_sum(terms[n]);
    long double mag = 0.0L;
    for (long double t : terms[n]) mag += std::fabs(t);
    out.b[n] = static_cast<double>(s);
    out.condition[n] = static_cast<double>(mag / std::fabs(s));
  }
  return out;
}

inline double low_regime_quartic(const LowRegimeCoefficients& lc, double x) {
  double v = 0.0;
  for (std::size_t n = 5; n-- > 0;) v = v * x + lc.b[n];
  return v;
}

/// Bound on f(x) - (1 - 2 delta_c) from the truncated power-series bounds,
/// assembled from the series coefficients before simplification.
inline double low_regime_pre_reduction(double x, double dc) {
  const auto tb = truncated_bounds();
  const double inv = 1.0 / x;
  const double r0 = eval_poly(tb[0].poly, x) / eval_poly(tb[1].poly, x);
  const double r1 = eval_poly(tb[2].poly, x) / eval_poly(tb[3].poly, x);
  return inv - dc * ((inv + 1.0) * r0 + (inv - 1.0) / 3.0 * r1) - (1.0 - 2.0 * dc);
}

struct LowRegimeDenominator {
  double constant;  // Gamma(1/4)^8 + 64 pi^4
  double first;     // 8G - 96 pi^2 x - 3G x^2
  double second;    // 16 pi^2 + G x - 6 pi^2 x^2
};

inline LowRegimeDenominator low_regime_denominator(double x) {
  const double g = specfun::gamma(0.25);
  const double G = g * g * g * g;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return {G * G + 64.0 * pi2 * pi2, 8.0 * G - 96.0 * pi2 * x - 3.0 * G * x * x,
          16.0 * pi2 + G * x - 6.0 * pi2 * x * x};
}

inline double low_regime_rational(double x) {
  const LowRegimeCoefficients lc = low_regime_coefficients();
  const LowRegimeDenominator d = low_regime_denominator(x);
  return low_regime_quartic(lc, x) / (d.constant * d.first * d.second);
}

inline CertificateReport certify_low_regime(std::size_t points = 100000) {
  const LowRegimeCoefficients lc = low_regime_coefficients();
  CertificateReport r;
  r.name = "low_regime";
  r.domain_lo = 0.0;
  r.domain_hi = 0.4;
  r.coefficients.assign(lc.b.begin(), lc.b.end());
  for (double b : lc.b) r.signs.push_back(sign_of(b));
  const std::array<const char*, 5> expected = {"+", "-", "-", "+", "-"};
  bool pattern = true;
  for (std::size_t n = 0; n < 5; ++n) pattern = pattern && r.signs[n] == expected[n];
  r.add("sign pattern (+,-,-,+,-)", 0.0, pattern);
  double worst_condition = 0.0;
  for (double c : lc.condition) worst_condition = std::max(worst_condition, c);
  // Extended precision leaves ~1e-19 relative per term; the sign is safe
  // as long as condition * 1e-16 (the input Gamma accuracy) stays far below 1.
  r.add("condition estimate of b_n", worst_condition, worst_condition * 1e-16 < 1e-6);

  double min_q = std::numeric_limits<double>::infinity();
  double min_den = std::numeric_limits<double>::infinity();
  double max_derivative = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= points; ++i) {
    const double x = 0.4 * static_cast<double>(i) / static_cast<double>(points);
    min_q = std::min(min_q, low_regime_quartic(lc, x));
    const LowRegimeDenominator d = low_regime_denominator(x);
    min_den = std::min({min_den, d.constant, d.first, d.second});
    const double deriv = lc.b[1] + x * (2.0 * lc.b[2] + x * (3.0 * lc.b[3] + x * 4.0 * lc.b[4]));
    max_derivative = std::max(max_derivative, deriv);
  }
  r.add("min of quartic on [0,0.4] (dense scan)", min_q, min_q > 0);
  // b_2, b_4 < 0 and b_3 > 0 give q'(x) <= b_1 + 3 b_3 (0.4)^2 on [0, 0.4].
  const double derivative_bound = lc.b[1] + 3.0 * lc.b[3] * 0.16;
  r.add("q' <= b1 + 3 b3 0.4^2 < 0 (quartic decreasing)", derivative_bound,
        derivative_bound < 0 && max_derivative < 0);
  const double q04 = low_regime_quartic(lc, 0.4);
  r.add("quartic at x = 0.4", q04, q04 > 0);
  r.add("denominator factors positive on [0,0.4]", min_den, min_den > 0);
  const double corrected = lc.b[0] + lc.b[1] * 0.4 + lc.b[2] * 0.16 + lc.b[4] * 0.0256;
  r.add("b0 + 0.4 b1 + 0.4^2 b2 + 0.4^4 b4 > 0", corrected, corrected > 0);
  const double flipped = lc.b[0] - lc.b[1] * 0.4 - lc.b[2] * 0.16 - lc.b[4] * 0.0256;
  r.notes.push_back("b0 - 0.4 b1 - 0.4^2 b2 - 0.4^4 b4 = " + std::to_string(flipped) +
                    " exceeds q(0) = b0 and is not a lower bound; the orientation with + signs is checked");
  r.min_value = min_q;
  r.finalize();
  return r;
}

/// Dual-path check of both "after some calculation" reductions.
inline CertificateReport rational_reduction_check(const std::vector<double>& x_samples) {
  const double dc = critical_coupling().delta_c;
  CertificateReport r;
  r.name = "rational_reduction";
  r.domain_lo = 0.0;
  r.domain_hi = 1.0;
  double worst = 0.0;
  for (double x : x_samples) {
    if (!(x > 0.0 && x <= 1.0)) throw PreconditionError("rational_reduction_check: samples must lie in (0, 1]");
    if (x >= 0.4) {
      const double pre = high_regime_pre_reduction(x, dc);
      const double post = high_regime_rational(x, dc);
      const double scale = std::max(std::abs(post), 1e-300);
      const double rel = x == 1.0 ? std::abs(pre - post) : std::abs(pre - post) / scale;
      worst = std::max(worst, rel);
      r.add("high regime x = " + std::to_string(x), rel, rel <= 1e-9);
    }
    if (x <= 0.4) {
      const double pre = low_regime_pre_reduction(x, dc);
      const double post = low_regime_rational(x);
      const double rel = std::abs(pre - post) / std::abs(post);
      worst = std::max(worst, rel);
      r.add("low regime x = " + std::to_string(x), rel, rel <= 1e-9);
    }
  }
  r.min_value = worst;
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------
// Aggregate checks

/// f >= 1 - 2 delta_c at x_i = i/N, equality at x = 1, and agreement of the
/// two representations at every sample.
inline CertificateReport positivity_check(std::size_t points = 10000, double tol = 1e-10) {
  const CriticalCoupling cc = critical_coupling();
  CertificateReport r;
  r.name = "positivity_of_f";
  r.domain_lo = 0.0;
  r.domain_hi = 1.0;
  double min_f = std::numeric_limits<double>::infinity();
  double max_split = 0.0;
  for (std::size_t i = 1; i <= points; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(points);
    const double fh = f_of_x(x, Representation::hypergeometric, cc.delta_c);
    const double fl = f_of_x(x, Representation::legendre, cc.delta_c);
    min_f = std::min(min_f, fh);
    max_split = std::max(max_split, std::abs(fh - fl) / std::max(1.0, 1.0 / x));
  }
  r.add("min f - (1 - 2 delta_c) over the samples", min_f - cc.floor, min_f >= cc.floor - tol);
  const double at_one = f_of_x(1.0, Representation::hypergeometric, cc.delta_c) - cc.floor;
  r.add("f(1) - (1 - 2 delta_c)", at_one, std::abs(at_one) <= tol);
  r.add("legendre vs hypergeometric, relative to max(1, 1/x)", max_split, max_split <= 1e-12);
  r.min_value = min_f;
  r.finalize();
  return r;
}

/// E(p) against f(1/e(p)). Both sides subtract O(e) quantities whose difference
/// is O(1), so the comparison tolerance is tol + 64 eps e(p).
inline CertificateReport energy_bound_consistency(double tol = 1e-10) {
  const double dc = critical_coupling().delta_c;
  CertificateReport r;
  r.name = "energy_bound_vs_f";
  r.domain_lo = 1e-6;
  r.domain_hi = 1e6;
  double worst = 0.0;
  bool ok = true;
  for (int i = 0; i <= 120; ++i) {
    const double p = std::pow(10.0, -6.0 + 0.1 * i);
    const double e = energy(p);
    const double diff = std::abs(energy_bound(p, dc) - f_of_x(1.0 / e, Representation::hypergeometric, dc));
    const double allowed = tol + 64.0 * std::numeric_limits<double>::epsilon() * e;
    worst = std::max(worst, diff / allowed);
    ok = ok && diff <= allowed;
  }
  r.add("max |E(p) - f(1/e(p))| / (tol + 64 eps e(p)), 121 points of [1e-6, 1e6]", worst, ok);
  r.min_value = worst;
  r.finalize();
  return r;
}

inline CertificateReport expansion_tails_check() {
  CertificateReport r;
  r.name = "expansion_tails";
  r.domain_lo = 0.4;
  r.domain_hi = 1.0;
  for (double nu : {-0.5, 0.5}) {
    for (int mu : {0, -1}) {
      for (double x : {0.4, 0.7, 0.95}) {
        const TailEstimate t = expansion_tail_check(nu, mu, x);
        r.add("nu = " + std::to_string(nu) + ", mu = " + std::to_string(mu) + ", x = " + std::to_string(x), t.tail,
              t.pass);
      }
    }
  }
  r.finalize();
  return r;
}

/// Every certificate report; tol_scale multiplies the tolerances that are
/// not structural (equality at x = 1, the E vs f comparison).
inline std::vector<CertificateReport> certificate_suite(double tol_scale = 1.0) {
  std::vector<CertificateReport> out;
  out.push_back(positivity_check(10000, 1e-10 * tol_scale));
  out.push_back(certify_high_regime());
  out.push_back(certify_low_regime());
  out.push_back(truncated_series_bounds_check());
  for (SeriesId id : all_series) out.push_back(series_monotonicity_check(id, 50));
  out.push_back(expansion_tails_check());
  std::vector<double> xs;
  for (int i = 1; i <= 100; ++i) xs.push_back(0.01 * i);
  out.push_back(rational_reduction_check(xs));
  out.push_back(energy_bound_consistency(1e-10 * tol_scale));
  return out;
}

}  // namespace br2d::cert
