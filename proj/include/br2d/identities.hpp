#pragma once

// Numerical checks of the identities behind the partial-wave reduction:
// angular orthogonality with its 2 pi constant, vanishing sine moments, the
// angular integral as a Legendre Q, the Hankel transform of r^a e^{-r},
// the three-term Q recurrence, and the reconstruction of the 2D form from a
// single channel.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "br2d/certificate.hpp"
#include "br2d/error.hpp"
#include "br2d/integrate.hpp"
#include "br2d/kernel.hpp"
#include "br2d/specfun.hpp"

namespace br2d::ident {

struct IdentityReport {
  std::string name;
  std::map<std::string, double> parameters;
  std::complex<double> lhs;
  std::complex<double> rhs;
  /// Relative error, or absolute when the right side vanishes.
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, double> extras;
};

namespace detail {

inline double mismatch(std::complex<double> lhs, std::complex<double> rhs) {
  const double scale = std::abs(rhs);
  return scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs);
}

inline void close(IdentityReport& r, double tol) {
  r.tolerance = tol;
  r.rel_error = mismatch(r.lhs, r.rhs);
  r.pass = r.rel_error <= tol;
}

inline quad::AdaptiveOptions options(double tol) {
  quad::AdaptiveOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;
  opt.max_intervals = 20000;
  return opt;
}

inline void require_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw PreconditionError("identity: q must lie in (0, 1)");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Angular integrals

/// int_0^{2 pi} cos(l theta) / sqrt(1 - q cos theta) dtheta by adaptive quadrature.
inline double angular_moment(double q, int l, double tol = 1e-13) {
  detail::require_q(q);
  auto f = [&](double t) { return std::cos(l * t) / std::sqrt(1.0 - q * std::cos(t)); };
  return quad::integrate_adaptive(f, 0.0, 2.0 * std::numbers::pi, detail::options(tol)).value;
}

/// 4 K(k) / sqrt(1 + q) with modulus k = sqrt(2q/(1+q)): the l = 0 moment.
inline double angular_moment_elliptic(double q) {
  detail::require_q(q);
  return 4.0 * specfun::ellint_k(std::sqrt(2.0 * q / (1.0 + q))) / std::sqrt(1.0 + q);
}

/// lhs: int int e^{i l theta} e^{-i l' theta'} / sqrt(1 - q cos(theta - theta')) on an
/// n x n periodic trapezoid grid. rhs: 2 pi delta_{l l'} times the 1D moment.
/// extras["ratio_4pi"] is lhs over the right side built with 4 pi instead.
inline IdentityReport angular_orthogonality(double q, int l, int l_prime, std::size_t n = 256,
                                            double tol = 1e-8) {
  detail::require_q(q);
  if (n < 8) throw PreconditionError("angular_orthogonality: need at least 8 angular nodes");
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = h * static_cast<double>(i);
    std::complex<double> row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double tp = h * static_cast<double>(j);
      row += std::polar(1.0, -l_prime * tp) / std::sqrt(1.0 - q * std::cos(t - tp));
    }
    sum += std::polar(1.0, l * t) * row;
  }
  IdentityReport r;
  r.name = "angular_orthogonality";
  r.parameters = {{"q", q}, {"l", l}, {"l_prime", l_prime}, {"n", static_cast<double>(n)}};
  r.lhs = sum * h * h;
  const double moment = l == l_prime ? angular_moment(q, l) : 0.0;
  r.rhs = 2.0 * std::numbers::pi * moment;
  detail::close(r, tol);
  if (l == l_prime) {
    r.extras["ratio_4pi"] = std::real(r.lhs) / (4.0 * std::numbers::pi * moment);
    if (l == 0) {
      const double oracle = angular_moment_elliptic(q);
      r.extras["elliptic_moment"] = oracle;
      r.extras["elliptic_rel_error"] = std::abs(moment - oracle) / oracle;
    }
  }
  return r;
}

/// int_0^{2 pi} sin(l theta) / sqrt(1 - q cos theta) dtheta = 0, checked in absolute terms.
inline IdentityReport sine_vanishing(double q, int l, double tol = 1e-10) {
  detail::require_q(q);
  auto f = [&](double t) { return std::sin(l * t) / std::sqrt(1.0 - q * std::cos(t)); };
  IdentityReport r;
  r.name = "sine_vanishing";
  r.parameters = {{"q", q}, {"l", l}};
  r.lhs = quad::integrate_adaptive(f, 0.0, 2.0 * std::numbers::pi, detail::options(1e-13)).value;
  r.rhs = 0.0;
  detail::close(r, tol);
  return r;
}

/// int_0^{2 pi} cos(k phi) / |p - p' e^{i phi}| dphi = (2/sqrt(p p')) Q_{k-1/2}((p/p' + p'/p)/2).
/// The sine part vanishes by symmetry.
inline IdentityReport angular_to_legendre(int k, double p, double p_prime, double tol = 1e-8) {
  if (k < 0) throw PreconditionError("angular_to_legendre: k must be >= 0");
  if (!(p > 0.0 && p_prime > 0.0) || p == p_prime) {
    throw DiagonalError("angular_to_legendre: need distinct positive momenta");
  }
  auto f = [&](double phi) {
    return std::cos(k * phi) / std::sqrt(p * p + p_prime * p_prime - 2.0 * p * p_prime * std::cos(phi));
  };
  IdentityReport r;
  r.name = "angular_to_legendre";
  r.parameters = {{"k", k}, {"p", p}, {"p_prime", p_prime}};
  // The integrand peaks at phi = 0 and 2 pi; fold onto [0, pi].
  r.lhs = 2.0 * quad::integrate_adaptive(f, 0.0, std::numbers::pi, detail::options(1e-13)).value;
  r.rhs = 2.0 / std::sqrt(p * p_prime) *
          specfun::legendre_q_half_direct(k, specfun::QArgument::from_momenta(p, p_prime));
  detail::close(r, tol);
  return r;
}

// ---------------------------------------------------------------------------
// Hankel transform of r^a e^{-r}

/// Gamma(k + a + 2) (p^2 + 1)^{-(a+2)/2} P^{-k}_{a+1}((p^2 + 1)^{-1/2}).
inline double hankel_closed(int k, double a, double p) {
  if (k != 0 && k != 1) throw PreconditionError("hankel: k must be 0 or 1");
  if (a != -0.5 && a != -1.5) throw PreconditionError("hankel: a must be -1/2 or -3/2");
  if (!(p >= 0.0)) throw PreconditionError("hankel: p must be >= 0");
  const double e = energy(p);
  const specfun::HalfIntegerDegree nu{a == -0.5 ? 1 : -1};
  const double one_minus_x = p * p / (e * (e + 1.0));
  const double leg = p == 0.0 ? (k == 0 ? 1.0 : 0.0) : specfun::legendre_p(-k, nu, 1.0 / e, one_minus_x);
  return specfun::gamma(k + a + 2.0) * std::pow(e, -(a + 2.0)) * leg;
}

struct HankelQuadrature {
  double value = 0.0;
  double accelerated = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

/// int_0^inf J_k(p r) r^{a+1} e^{-r} dr panel by panel, with panels of length
/// pi/p (half a Bessel period). Stops once a panel falls below `tol` times the
/// running sum; Wynn's epsilon on the partial sums is reported alongside.
inline HankelQuadrature hankel_quadrature(int k, double a, double p, double tol = 1e-13,
                                          std::size_t max_panels = 2000) {
  auto f = [&](double r) { return specfun::bessel_j(k, p * r) * std::pow(r, a + 1.0) * std::exp(-r); };
  const double width = p > 0.0 ? std::min(std::numbers::pi / p, 1.0) : 1.0;
  HankelQuadrature h;
  std::vector<double> partial;
  double lo = 0.0;
  double sum = 0.0;
  const auto opt = detail::options(0.01 * tol);
  for (std::size_t i = 0; i < max_panels; ++i) {
    const double piece = quad::integrate_adaptive(f, lo, lo + width, opt).value;
    sum += piece;
    partial.push_back(sum);
    lo += width;
    ++h.panels;
    if (i > 2 && std::abs(piece) <= tol * std::abs(sum)) {
      h.converged = true;
      break;
    }
  }
  h.value = sum;
  const std::size_t tail = std::min<std::size_t>(partial.size(), 12);
  h.accelerated = quad::wynn_epsilon(std::vector<double>(partial.end() - static_cast<std::ptrdiff_t>(tail), partial.end()));
  return h;
}

inline IdentityReport hankel_identity(int k, double a, double p, double tol = 1e-5) {
  if (!(k + a + 2.0 > 0.0)) throw PreconditionError("hankel_identity: need k + a + 2 > 0");
  if (!(p > 0.0)) throw PreconditionError("hankel_identity: p must be positive");
  IdentityReport r;
  r.name = "hankel_identity";
  r.parameters = {{"k", k}, {"a", a}, {"p", p}};
  r.rhs = hankel_closed(k, a, p);
  const HankelQuadrature h = hankel_quadrature(k, a, p);
  r.lhs = h.value;
  r.extras["panels"] = static_cast<double>(h.panels);
  r.extras["accelerated"] = h.accelerated;
  r.extras["converged"] = h.converged ? 1.0 : 0.0;
  detail::close(r, tol);
  if (!h.converged) r.pass = false;
  return r;
}

// ---------------------------------------------------------------------------
// Three-term recurrence of Q_{k-1/2}

/// Residual of (k + 1/2) Q_{k+1/2} = 2k t Q_{k-1/2} - (k - 1/2) Q_{k-3/2} with every
/// Q from direct quadrature, relative to the largest term, maximized over 1 <= k < k_max.
inline IdentityReport q_recurrence(double t, int k_max = 20, double tol = 1e-9) {
  if (k_max < 2) throw PreconditionError("q_recurrence: k_max must be at least 2");
  const specfun::QArgument arg = specfun::QArgument::from_t(t);
  std::vector<double> q(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) q[static_cast<std::size_t>(k)] = specfun::legendre_q_half_direct(k, arg);
  double worst = 0.0;
  for (int k = 1; k < k_max; ++k) {
    const double lhs = (k + 0.5) * q[static_cast<std::size_t>(k) + 1];
    const double a = 2.0 * k * t * q[static_cast<std::size_t>(k)];
    const double b = (k - 0.5) * q[static_cast<std::size_t>(k) - 1];
    const double scale = std::max({std::abs(lhs), std::abs(a), std::abs(b)});
    worst = std::max(worst, std::abs(lhs - (a - b)) / scale);
  }
  IdentityReport r;
  r.name = "q_recurrence";
  r.parameters = {{"t", t}, {"k_max", k_max}};
  r.lhs = worst;
  r.rhs = 0.0;
  detail::close(r, tol);
  return r;
}

/// I_k(p): closed form against adaptive quadrature.
inline IdentityReport i_k_transform(int k, double p, double tol = 1e-6) {
  IdentityReport r;
  r.name = "i_k_transform";
  r.parameters = {{"k", k}, {"p", p}};
  r.lhs = cert::i_k_quadrature(k, p).value;
  r.rhs = cert::i_k_closed(k, p);
  detail::close(r, tol);
  return r;
}

// ---------------------------------------------------------------------------
// Single-channel reconstruction of the 2D form

struct RadialProfile {
  std::function<double(double)> a;
  double lo = 1.0;
  double hi = 2.0;
};

/// exp(-1/((r - lo)(hi - r))) on (lo, hi), zero outside.
inline RadialProfile bump_profile(double lo = 1.0, double hi = 2.0) {
  if (!(lo > 0.0 && hi > lo)) throw PreconditionError("bump_profile: need 0 < lo < hi");
  return {[lo, hi](double r) { return r > lo && r < hi ? std::exp(-1.0 / ((r - lo) * (hi - r))) : 0.0; }, lo, hi};
}

struct FormParts {
  double kinetic = 0.0;
  /// The double integral multiplying the coupling (before the delta/pi or delta/(2 pi) factor).
  double potential = 0.0;
};

/// <a, b_k a> pieces on the half-line: int e a^2 and int int a a' K_k.
/// The log singularity sits on the endpoint of each inner integral.
inline FormParts channel_form_parts(Channel ch, const RadialProfile& prof, double tol = 1e-10) {
  const auto opt = detail::options(tol);
  FormParts out;
  out.kinetic =
      quad::integrate_adaptive([&](double r) { double v = prof.a(r); return energy(r) * v * v; }, prof.lo, prof.hi, opt)
          .value;
  auto outer = [&](double r) {
    const double ar = prof.a(r);
    if (ar == 0.0) return 0.0;
    auto inner = [&](double s) { return s == r ? 0.0 : prof.a(s) * channel_kernel(ch, r, s); };
    return ar * quad::integrate_adaptive(inner, prof.lo, r, opt).value;
  };
  out.potential = 2.0 * quad::integrate_adaptive(outer, prof.lo, prof.hi, opt).value;
  return out;
}

struct PlaneGrid {
  std::size_t radial = 48;
  std::size_t angular = 8;
  /// Directions around each outer point for the inner polar integral.
  std::size_t directions = 64;
  double inner_tol = 1e-10;
};

/// The 2D form for u(r e^{i theta}) = (2 pi)^{-1/2} r^{-1/2} a(r) e^{i k theta}. Outer
/// integral on a Gauss x trapezoid polar grid; the inner integral over p' in
/// polar coordinates centered at p, which absorbs the 1/|p - p'| singularity.
/// Returns the kinetic integral and int int u(p) conj(u(p')) K(p, p') d^2p d^2p'.
inline FormParts plane_form_parts(Channel ch, const RadialProfile& prof, const PlaneGrid& g = {}) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double c = 1.0 / std::sqrt(two_pi);
  auto u = [&](double x, double y) -> std::complex<double> {
    const double r = std::hypot(x, y);
    const double ar = prof.a(r);
    if (ar == 0.0) return 0.0;
    return c / std::sqrt(r) * ar * std::polar(1.0, ch.k * std::atan2(y, x));
  };
  const quad::GaussRule rule = quad::gauss_legendre(g.radial);
  const double half = 0.5 * (prof.hi - prof.lo);
  const double dth = two_pi / static_cast<double>(g.angular);
  const double dpsi = two_pi / static_cast<double>(g.directions);
  const auto opt = detail::options(g.inner_tol);

  FormParts out;
  std::complex<double> pot = 0.0;
  for (std::size_t i = 0; i < g.radial; ++i) {
    const double r = prof.lo + half * (rule.nodes[i] + 1.0);
    const double wr = half * rule.weights[i] * r;
    for (std::size_t m = 0; m < g.angular; ++m) {
      const double th = dth * (static_cast<double>(m) + 0.5);
      const Momentum2D p{r * std::cos(th), r * std::sin(th)};
      const std::complex<double> up = u(p.p1, p.p2);
      out.kinetic += wr * dth * energy(p) * std::norm(up);

      std::complex<double> inner = 0.0;
      for (std::size_t d = 0; d < g.directions; ++d) {
        const double psi = dpsi * static_cast<double>(d);
        const double cx = std::cos(psi);
        const double cy = std::sin(psi);
        // Break the ray at its crossings of the support annulus.
        const double proj = r * std::cos(psi - th);
        std::vector<double> cuts{0.0};
        for (double radius : {prof.lo, prof.hi}) {
          const double disc = proj * proj - r * r + radius * radius;
          if (disc <= 0.0) continue;
          for (double rho : {-proj - std::sqrt(disc), -proj + std::sqrt(disc)}) {
            if (rho > 0.0) cuts.push_back(rho);
          }
        }
        std::sort(cuts.begin(), cuts.end());
        auto along = [&](double rho, bool imag) {
          if (rho <= 0.0) return 0.0;
          const Momentum2D q{p.p1 + rho * cx, p.p2 + rho * cy};
          const std::complex<double> v = std::conj(u(q.p1, q.p2)) * full_kernel(p, q) * rho;
          return imag ? v.imag() : v.real();
        };
        for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
          const double re = quad::integrate_adaptive([&](double x) { return along(x, false); }, cuts[s], cuts[s + 1], opt).value;
          const double im = quad::integrate_adaptive([&](double x) { return along(x, true); }, cuts[s], cuts[s + 1], opt).value;
          inner += std::complex<double>(re, im);
        }
      }
      pot += wr * dth * up * inner * dpsi;
    }
  }
  out.potential = pot.real();
  return out;
}

/// lhs: the 2D form int E |u|^2 - (delta/(2 pi)) int int u conj(u') K.
/// rhs: the channel form int e a^2 - (delta/pi) int int a a' K_k.
/// extras["counterfactual_ratio"]: the channel potential term with the angular
/// constant 4 pi in place of 2 pi, divided by the 2D potential term.
inline IdentityReport partial_wave_reconstruction(Channel ch, const RadialProfile& prof, double delta,
                                                  double tol = 1e-3, const PlaneGrid& g = {}) {
  if (!(delta >= 0.0)) throw PreconditionError("partial_wave_reconstruction: delta must be >= 0");
  const double pi = std::numbers::pi;
  const FormParts plane = plane_form_parts(ch, prof, g);
  const FormParts line = channel_form_parts(ch, prof);
  const double plane_pot = delta / (2.0 * pi) * plane.potential;
  const double line_pot = delta / pi * line.potential;
  IdentityReport r;
  r.name = "partial_wave_reconstruction";
  r.parameters = {{"k", ch.k}, {"delta", delta}, {"lo", prof.lo}, {"hi", prof.hi}};
  r.lhs = plane.kinetic - plane_pot;
  r.rhs = line.kinetic - line_pot;
  detail::close(r, tol);
  r.extras["kinetic_rel_error"] = std::abs(plane.kinetic - line.kinetic) / line.kinetic;
  // Coupling-free ratio so that delta = 0 still reports it.
  r.extras["potential_rel_error"] = std::abs(plane.potential - 2.0 * line.potential) / (2.0 * line.potential);
  r.extras["counterfactual_ratio"] = 2.0 * (2.0 * line.potential) / plane.potential;
  return r;
}

// ---------------------------------------------------------------------------
// Default suite

/// Every report at its declared tolerance scaled by `tol_scale`.
inline std::vector<IdentityReport> identity_suite(double tol_scale = 1.0) {
  std::vector<IdentityReport> out;
  for (double q : {0.3, 0.6, 0.9}) {
    for (int l = 0; l <= 2; ++l) {
      for (int lp = 0; lp <= 2; ++lp) out.push_back(angular_orthogonality(q, l, lp, 256, 1e-8 * tol_scale));
    }
  }
  for (auto [q, l] : {std::pair{0.3, 1}, {0.99, 5}, {0.5, 0}}) out.push_back(sine_vanishing(q, l, 1e-10 * tol_scale));
  out.push_back(angular_to_legendre(0, 1.0, 2.0, 1e-8 * tol_scale));
  out.push_back(angular_to_legendre(3, 0.5, 0.7, 1e-8 * tol_scale));
  for (int k : {0, 1}) {
    for (double a : {-0.5, -1.5}) {
      for (double p : {0.3, 1.0, 3.0}) out.push_back(hankel_identity(k, a, p, 1e-5 * tol_scale));
    }
  }
  for (int k : {0, 1}) {
    for (double p : {0.1, 1.0, 10.0}) out.push_back(i_k_transform(k, p, 1e-6 * tol_scale));
  }
  for (double t : {1.01, 1.25, 2.0, 10.0, 100.0}) out.push_back(q_recurrence(t, 20, 1e-9 * tol_scale));
  const RadialProfile bump = bump_profile(1.0, 2.0);
  out.push_back(partial_wave_reconstruction({0}, bump, cert::critical_coupling().delta_c, 1e-3 * tol_scale));
  out.push_back(partial_wave_reconstruction({2}, bump, 0.2, 1e-3 * tol_scale));
  return out;
}

}  // namespace br2d::ident
