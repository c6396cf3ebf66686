#pragma once

// Real special functions on the narrow domains the reduction needs:
// Gamma, digamma, Pochhammer, the Gauss series 2F1 on |x| <= 1/2, associated
// Legendre P of order 0/-1 and half-integer degree on (0,1], Legendre Q of
// half-integer degree on (1, inf), Bessel J of integer order, and complete
// elliptic integrals (AGM) used as an independent cross-check.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "br2d/error.hpp"
#include "br2d/integrate.hpp"

namespace br2d::specfun {

namespace detail {

inline constexpr double lanczos_g = 607.0 / 128.0;
inline constexpr std::array<double, 15> lanczos_c = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

inline double lanczos_sum(double z) {
  double a = lanczos_c[0];
  for (std::size_t k = 1; k < lanczos_c.size(); ++k) a += lanczos_c[k] / (z + static_cast<double>(k));
  return a;
}

inline void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << what << ": argument must be positive and finite, got " << x;
    throw DomainError(msg.str());
  }
}

}  // namespace detail

/// Gamma function for x > 0 (Lanczos, g = 607/128, 15 terms).
inline double gamma(double x) {
  detail::require_positive(x, "gamma");
  if (x < 0.5) {
    // Reflection keeps the rational part in its accurate range.
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
  }
  if (x > 171.7) return std::numeric_limits<double>::infinity();
  const double z = x - 1.0;
  const double t = z + detail::lanczos_g + 0.5;
  // Split the power to delay overflow for large x.
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) *
         detail::lanczos_sum(z);
}

inline double log_gamma(double x) {
  detail::require_positive(x, "log_gamma");
  if (x < 0.5) {
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  const double t = z + detail::lanczos_g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(detail::lanczos_sum(z));
}

/// psi(x) = Gamma'(x)/Gamma(x) for x > 0: upward shift to x >= 10, then the
/// asymptotic Bernoulli series.
inline double digamma(double x) {
  detail::require_positive(x, "digamma");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  // B_2k / (2k) for k = 1..7.
  const double series =
      r * (1.0 / 12.0 -
           r * (1.0 / 120.0 -
                r * (1.0 / 252.0 -
                     r * (1.0 / 240.0 -
                          r * (1.0 / 132.0 - r * (691.0 / 32760.0 - r * (1.0 / 12.0)))))));
  return shift + std::log(x) - 0.5 / x - series;
}

/// Rising factorial (a)_n.
inline double pochhammer(double a, int n) {
  if (n < 0) throw DomainError("pochhammer: n must be nonnegative");
  double v = 1.0;
  for (int j = 0; j < n; ++j) v *= a + j;
  return v;
}

struct Hyp2F1Params {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double x = 0.0;
};

struct SeriesValue {
  double value = 0.0;
  /// Upper bound on |sum of omitted terms|.
  double tail_bound = 0.0;
  int terms = 0;
};

namespace detail {

inline void check_hyp2f1(const Hyp2F1Params& p) {
  if (!(std::abs(p.x) <= 0.5)) {
    std::ostringstream msg;
    msg << "hyp2f1: argument " << p.x << " outside the series regime |x| <= 1/2";
    throw DomainError(msg.str());
  }
  if (p.c <= 0.0 && std::floor(p.c) == p.c) throw DomainError("hyp2f1: c is a nonpositive integer");
}

// Bound on every term ratio |T_{j+1}/T_j| for j >= m.
inline double hyp2f1_ratio_bound(const Hyp2F1Params& p, int m) {
  if (p.c + m <= 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(p.x) * (1.0 + std::abs(p.a - 1.0) / (m + 1.0)) *
         (1.0 + std::abs(p.b - p.c) / (p.c + m));
}

}  // namespace detail

/// Sum of the first `terms` terms (indices 0..terms-1) with a bound on the rest.
inline SeriesValue hyp2f1_partial(const Hyp2F1Params& p, int terms) {
  detail::check_hyp2f1(p);
  if (terms < 1) throw DomainError("hyp2f1_partial: need at least one term");
  double term = 1.0;
  double sum = 1.0;
  for (int m = 0; m + 1 < terms; ++m) {
    term *= (p.a + m) * (p.b + m) / ((p.c + m) * (m + 1.0)) * p.x;
    sum += term;
  }
  SeriesValue out{sum, 0.0, terms};
  const int last = terms - 1;
  const double next = term * (p.a + last) * (p.b + last) / ((p.c + last) * (last + 1.0)) * p.x;
  if (next == 0.0 && term != 0.0) {
    // The numerator hit a nonpositive integer: the series terminates.
    return out;
  }
  const double rho = detail::hyp2f1_ratio_bound(p, last);
  out.tail_bound = rho < 1.0 ? std::abs(term) * rho / (1.0 - rho)
                             : std::numeric_limits<double>::infinity();
  return out;
}

/// Gauss series F(a,b;c;x) for |x| <= 1/2, summed until the certified tail
/// bound is below 1e-16 relative.
inline SeriesValue hyp2f1_series(const Hyp2F1Params& p) {
  detail::check_hyp2f1(p);
  double term = 1.0;
  double sum = 1.0;
  for (int m = 0; m < 2000; ++m) {
    const double next = term * (p.a + m) * (p.b + m) / ((p.c + m) * (m + 1.0)) * p.x;
    if (next == 0.0) return {sum, 0.0, m + 1};
    const double rho = detail::hyp2f1_ratio_bound(p, m + 1);
    term = next;
    sum += term;
    if (rho < 1.0) {
      const double tail = std::abs(term) * rho / (1.0 - rho);
      if (tail <= 1e-16 * std::abs(sum)) return {sum, tail, m + 2};
    }
  }
  throw ConvergenceError("hyp2f1: series did not reach its tail bound within 2000 terms");
}

inline double hyp2f1(const Hyp2F1Params& p) { return hyp2f1_series(p).value; }

inline double hyp2f1(double a, double b, double c, double x) { return hyp2f1({a, b, c, x}); }

/// Degree nu = twice_nu / 2.
struct HalfIntegerDegree {
  int twice_nu = -1;
  constexpr double value() const { return 0.5 * twice_nu; }
  constexpr bool is_half_odd() const { return twice_nu % 2 != 0; }
};

inline constexpr HalfIntegerDegree minus_half{-1};
inline constexpr HalfIntegerDegree plus_half{1};

/// Associated Legendre P^mu_nu on the cut, mu in {0,-1}, nu in {-1/2, 1/2},
/// from the hypergeometric representation. `one_minus_x` is 1 - x, passed
/// separately so callers can keep it accurate near x = 1.
inline double legendre_p(int mu, HalfIntegerDegree nu, double x, double one_minus_x) {
  if (mu != 0 && mu != -1) throw DomainError("legendre_p: order must be 0 or -1");
  if (nu.twice_nu != 1 && nu.twice_nu != -1) throw DomainError("legendre_p: degree must be +-1/2");
  if (!(x > 0.0 && x <= 1.0) || one_minus_x < 0.0) {
    std::ostringstream msg;
    msg << "legendre_p: x = " << x << " outside (0, 1]";
    throw DomainError(msg.str());
  }
  const double v = nu.value();
  const double f = hyp2f1({-v, v + 1.0, 1.0 - mu, 0.5 * one_minus_x});
  if (mu == 0) return f;
  // 1/Gamma(2) = 1 and ((1+x)/(1-x))^{-1/2}.
  return std::sqrt(one_minus_x / (1.0 + x)) * f;
}

inline double legendre_p(int mu, HalfIntegerDegree nu, double x) {
  return legendre_p(mu, nu, x, 1.0 - x);
}

/// Argument of a Legendre Q evaluation, stored with the derived quantities
/// whose accuracy matters near t = 1: z = t - sqrt(t^2 - 1) and 1 - z.
struct QArgument {
  double t = 2.0;
  double z = 0.0;
  double one_minus_z = 1.0;

  static QArgument from_t(double t) {
    if (!(t > 1.0) || !std::isfinite(t)) {
      std::ostringstream msg;
      msg << "legendre_q: argument t = " << t << " must exceed 1";
      throw DomainError(msg.str());
    }
    const double s = std::sqrt((t - 1.0) * (t + 1.0));
    QArgument q;
    q.t = t;
    q.z = 1.0 / (t + s);
    q.one_minus_z = ((t - 1.0) + s) / (t + s);
    return q;
  }

  /// t = (p/q + q/p)/2, for which z = min/max exactly.
  static QArgument from_momenta(double p, double q) {
    if (!(p > 0.0 && q > 0.0) || p == q) {
      std::ostringstream msg;
      msg << "legendre_q: momenta (" << p << ", " << q << ") must be positive and distinct";
      throw DiagonalError(msg.str());
    }
    const double lo = std::min(p, q);
    const double hi = std::max(p, q);
    QArgument a;
    a.z = lo / hi;
    a.one_minus_z = (hi - lo) / hi;
    const double d = p - q;
    a.t = 1.0 + d * d / (2.0 * p * q);
    return a;
  }
};

/// Q_{k-1/2}(t) for k >= 0 by quadrature of the integral representation
/// after x = z sin^2(theta) and tan(phi) = kappa sinh(w):
///   Q_{k-1/2}(t) = 2 z^{k+1/2} int_0^inf (1 + kappa^2 sinh^2 w)^{-(2k+1)/2} dw,
/// with kappa^2 = 1 - z^2.
inline double legendre_q_half_direct(int k, const QArgument& arg) {
  if (k < 0) throw DomainError("legendre_q_half: degree index must be nonnegative");
  const double z = arg.z;
  const double kappa2 = arg.one_minus_z * (1.0 + z);
  const double kappa = std::sqrt(kappa2);
  const double cutoff = std::pow(10.0, 18.0 / (2.0 * k + 1.0));
  const double knee = std::asinh(1.0 / kappa);
  const double end = std::asinh(cutoff / kappa);
  auto integrand = [&](double w) {
    const double s = std::sinh(w);
    const double r = 1.0 / std::sqrt(1.0 + kappa2 * s * s);
    const double r2 = r * r;
    double v = r;
    for (int j = 0; j < k; ++j) v *= r2;
    return v;
  };
  quad::AdaptiveOptions opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-14;
  opt.weaken_endpoints = false;
  double inner = 0.0;
  if (knee < end) {
    inner = quad::integrate_adaptive(integrand, 0.0, knee, opt).value;
    // The far piece is positive and small relative to the whole.
    opt.abs_tol = 1e-15 * inner;
    inner += quad::integrate_adaptive(integrand, knee, end, opt).value;
  } else {
    inner = quad::integrate_adaptive(integrand, 0.0, end, opt).value;
  }
  return 2.0 * std::pow(z, k + 0.5) * inner;
}

/// Q_{m-1/2}(t) for m = 0..count-1. Q_{-1/2} and Q_{1/2} come from the
/// integral representation; higher degrees use the upward three-term
/// recurrence while its amplification of the start errors stays below 100 and
/// the computed ratio lies in (0, z]; otherwise the degree is computed directly.
inline std::vector<double> legendre_q_half_sequence(int count, const QArgument& arg) {
  if (count <= 0) return {};
  std::vector<double> q(static_cast<std::size_t>(count));
  q[0] = legendre_q_half_direct(0, arg);
  if (count == 1) return q;
  q[1] = legendre_q_half_direct(1, arg);
  const double z = arg.z;
  const double inv_z2 = 1.0 / (z * z);
  double amplification = 1.0;
  bool last_direct = true;
  for (int m = 1; m + 1 < count; ++m) {
    amplification *= inv_z2;
    double next = std::numeric_limits<double>::quiet_NaN();
    if (amplification <= 100.0) {
      const double j = m;
      next = (2.0 * j * arg.t * q[m] - (j - 0.5) * q[m - 1]) / (j + 0.5);
    }
    const bool ratio_ok = next > 0.0 && next <= z * q[m] * (1.0 + 1e-12);
    if (ratio_ok) {
      q[m + 1] = next;
      last_direct = false;
      continue;
    }
    // Restart from a freshly computed pair so earlier growth is not inherited.
    if (!last_direct) q[m] = legendre_q_half_direct(m, arg);
    q[m + 1] = legendre_q_half_direct(m + 1, arg);
    amplification = 1.0;
    last_direct = true;
  }
  return q;
}

/// Q_{k-1/2}(t), k >= 0, t > 1.
inline double legendre_q_half(int k, double t) {
  const QArgument arg = QArgument::from_t(t);
  if (k <= 1) return legendre_q_half_direct(k, arg);
  return legendre_q_half_sequence(k + 1, arg)[static_cast<std::size_t>(k)];
}

/// Complete elliptic integrals of the first and second kind, modulus k in [0,1).
struct EllipticPair {
  double k_value = 0.0;
  double e_value = 0.0;
};

inline EllipticPair ellint_ke(double modulus) {
  if (!(modulus >= 0.0 && modulus < 1.0)) throw DomainError("ellint: modulus must lie in [0, 1)");
  double a = 1.0;
  double b = std::sqrt((1.0 - modulus) * (1.0 + modulus));
  double c = modulus;
  double power = 0.5;
  double sum = power * c * c;
  for (int it = 0; it < 60; ++it) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    power *= 2.0;
    sum += power * c * c;
    if (std::abs(c) <= 1e-17 * a) break;
  }
  const double kv = std::numbers::pi / (2.0 * a);
  return {kv, kv * (1.0 - sum)};
}

inline double ellint_k(double modulus) { return ellint_ke(modulus).k_value; }
inline double ellint_e(double modulus) { return ellint_ke(modulus).e_value; }

/// P^mu_nu(x) for mu in {0,-1}, nu in {-1/2, 1/2} through complete elliptic
/// integrals, independent of the hypergeometric route: with k = sqrt((1-x)/2),
///   P_{-1/2}(x) = (2/pi) K(k),  P_{1/2}(x) = (2/pi)(2E(k) - K(k)),
/// and P^{-1}_nu(x) = (1-x^2)^{-1/2} int_x^1 P_nu(t) dt by adaptive quadrature.
inline double legendre_p_elliptic(int mu, HalfIntegerDegree nu, double x) {
  if (mu != 0 && mu != -1) throw DomainError("legendre_p_elliptic: order must be 0 or -1");
  if (nu.twice_nu != 1 && nu.twice_nu != -1) {
    throw DomainError("legendre_p_elliptic: degree must be +-1/2");
  }
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("legendre_p_elliptic: x outside (0, 1]");
  auto p_zero_order = [&](double t) {
    const EllipticPair ke = ellint_ke(std::sqrt(0.5 * (1.0 - t)));
    const double v = nu.twice_nu < 0 ? ke.k_value : 2.0 * ke.e_value - ke.k_value;
    return 2.0 / std::numbers::pi * v;
  };
  if (mu == 0) return p_zero_order(x);
  if (x == 1.0) return 0.0;
  quad::AdaptiveOptions opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-14;
  const double integral = quad::integrate_adaptive(p_zero_order, x, 1.0, opt).value;
  return integral / std::sqrt((1.0 - x) * (1.0 + x));
}

/// Bessel function J_k(x) of integer order k >= 0, x >= 0.
inline double bessel_j(int k, double x) {
  if (k < 0) throw DomainError("bessel_j: order must be nonnegative");
  if (x < 0.0 || !std::isfinite(x)) throw DomainError("bessel_j: argument must be finite and >= 0");
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  if (x <= 2.0) {
    // Ascending series; all terms shrink fast here.
    const double h = 0.5 * x;
    double term = 1.0;
    for (int j = 1; j <= k; ++j) term *= h / j;
    double sum = term;
    for (int m = 1; m < 60; ++m) {
      term *= -h * h / (static_cast<double>(m) * (m + k));
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  // Miller backward recurrence, normalized by J_0 + 2 sum J_{2m} = 1.
  const double big = std::max<double>(k, x);
  int start = static_cast<int>(big + 30.0 + 2.0 * std::sqrt(40.0 * big));
  start += start % 2;
  double next = 0.0;
  double cur = 1e-300;
  double norm = 0.0;
  double result = 0.0;
  for (int j = start; j >= 1; --j) {
    const double prev = 2.0 * j / x * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
    if (j - 1 == k) result = cur;
    if ((j - 1) % 2 == 0 && j - 1 > 0) norm += 2.0 * cur;
  }
  norm += cur;
  return result / norm;
}

}  // namespace br2d::specfun
