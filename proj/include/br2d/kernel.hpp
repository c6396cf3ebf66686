#pragma once

// Reduced kernels of the massive two-dimensional projected Coulomb problem in
// momentum space (units m = c = hbar = 1): kinetic energy, spinor
// normalization, the angular weights, the full 2D kernel and the
// partial-wave channel kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <utility>
#include <vector>

#include "br2d/error.hpp"
#include "br2d/specfun.hpp"

namespace br2d {

/// Angular-momentum channel index.
struct Channel {
  int k = 0;
};

struct Momentum2D {
  double p1 = 0.0;
  double p2 = 0.0;
};

/// e(p) = sqrt(p^2 + 1).
inline double energy(double p) { return std::hypot(p, 1.0); }

inline double energy(const Momentum2D& v) { return std::sqrt(v.p1 * v.p1 + v.p2 * v.p2 + 1.0); }

/// n(p) = sqrt(2 e (e + 1)).
inline double normalization(double p) {
  const double e = energy(p);
  return std::sqrt(2.0 * e * (e + 1.0));
}

struct BetaWeights {
  double beta1 = 0.0;
  double beta2 = 0.0;
};

/// beta1 = (1/2) sqrt(1 + 1/e) sqrt(1 + 1/e'), beta2 = (1/2) sqrt(1 - 1/e) sqrt(1 - 1/e').
/// 1 - 1/e is evaluated as p^2 / (e (e + 1)) to keep small momenta accurate.
inline BetaWeights beta_weights(double p, double q) {
  const double ep = energy(p);
  const double eq = energy(q);
  const double plus = std::sqrt((1.0 + 1.0 / ep) * (1.0 + 1.0 / eq));
  const double minus = std::sqrt((p * p / (ep * (ep + 1.0))) * (q * q / (eq * (eq + 1.0))));
  return {0.5 * plus, 0.5 * minus};
}

/// Quotient form: beta1 = (e+1)(e'+1)/(n n'), beta2 = p p'/(n n').
inline BetaWeights beta_weights_quotient(double p, double q) {
  const double nn = normalization(p) * normalization(q);
  return {(energy(p) + 1.0) * (energy(q) + 1.0) / nn, p * q / nn};
}

/// Legendre index pair (m1, m2) such that K_k = beta1 Q_{m1-1/2} + beta2 Q_{m2-1/2}.
inline std::pair<int, int> channel_degrees(Channel ch) {
  if (ch.k >= 0) return {ch.k, ch.k + 1};
  return {-ch.k, -ch.k - 1};
}

/// Coefficient s of the logarithmic singularity K_k(p,q) ~ -s log|p - q|
/// on the diagonal; equal to beta1 + beta2 and independent of k.
inline double log_singularity_coefficient(double p, double q) {
  const BetaWeights b = beta_weights(p, q);
  return b.beta1 + b.beta2;
}

/// Partial-wave channel kernel K_k(p, q) for p != q.
inline double channel_kernel(Channel ch, double p, double q) {
  const specfun::QArgument arg = specfun::QArgument::from_momenta(p, q);
  const auto [m1, m2] = channel_degrees(ch);
  const int top = std::max(m1, m2);
  const BetaWeights b = beta_weights(p, q);
  if (top <= 1) {
    const double q0 = specfun::legendre_q_half_direct(0, arg);
    const double q1 = specfun::legendre_q_half_direct(1, arg);
    return b.beta1 * (m1 == 0 ? q0 : q1) + b.beta2 * (m2 == 0 ? q0 : q1);
  }
  const std::vector<double> q_seq = specfun::legendre_q_half_sequence(top + 1, arg);
  return b.beta1 * q_seq[static_cast<std::size_t>(m1)] + b.beta2 * q_seq[static_cast<std::size_t>(m2)];
}

/// K_k(p, q) for several channels sharing one Legendre sequence.
inline std::vector<double> channel_kernels(const std::vector<Channel>& channels, double p, double q) {
  const specfun::QArgument arg = specfun::QArgument::from_momenta(p, q);
  int top = 1;
  for (const Channel& ch : channels) {
    const auto [m1, m2] = channel_degrees(ch);
    top = std::max({top, m1, m2});
  }
  const std::vector<double> q_seq = specfun::legendre_q_half_sequence(top + 1, arg);
  const BetaWeights b = beta_weights(p, q);
  std::vector<double> out;
  out.reserve(channels.size());
  for (const Channel& ch : channels) {
    const auto [m1, m2] = channel_degrees(ch);
    out.push_back(b.beta1 * q_seq[static_cast<std::size_t>(m1)] +
                  b.beta2 * q_seq[static_cast<std::size_t>(m2)]);
  }
  return out;
}

/// Full kernel ((E+1)(E'+1) + p conj(p')) / (N N' |p - p'|) with p = p1 + i p2.
inline std::complex<double> full_kernel(const Momentum2D& a, const Momentum2D& b) {
  const double d1 = a.p1 - b.p1;
  const double d2 = a.p2 - b.p2;
  const double dist = std::hypot(d1, d2);
  if (dist == 0.0) {
    std::ostringstream msg;
    msg << "full_kernel: coincident momenta (" << a.p1 << ", " << a.p2 << ")";
    throw DiagonalError(msg.str());
  }
  const double ea = energy(a);
  const double eb = energy(b);
  const double na = std::sqrt(2.0 * ea * (ea + 1.0));
  const double nb = std::sqrt(2.0 * eb * (eb + 1.0));
  const std::complex<double> pa(a.p1, a.p2);
  const std::complex<double> pb(b.p1, b.p2);
  return ((ea + 1.0) * (eb + 1.0) + pa * std::conj(pb)) / (na * nb * dist);
}

}  // namespace br2d
