#pragma once

// Dense symmetric matrices and two eigensolvers: Householder
// tridiagonalization with implicit QL (the production path) and cyclic
// Jacobi rotations (slow, used to cross-check the first).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "br2d/error.hpp"

namespace br2d::linalg {

class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  /// Sets both (i, j) and (j, i).
  void set_symmetric(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  std::vector<double> multiply(const std::vector<double>& v) const {
    if (v.size() != n_) throw PreconditionError("SymmetricMatrix::multiply: size mismatch");
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const double* row = &data_[i * n_];
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += row[j] * v[j];
      out[i] = s;
    }
    return out;
  }

  double max_asymmetry() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
    return worst;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  /// Ascending eigenvalues.
  std::vector<double> values;
  /// vectors[k] is the unit eigenvector of values[k].
  std::vector<std::vector<double>> vectors;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

/// ||M v - lambda v||_2.
inline double eigen_residual(const SymmetricMatrix& m, double lambda, const std::vector<double>& v) {
  std::vector<double> r = m.multiply(v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lambda * v[i];
  return norm2(r);
}

/// Spectral norm of a symmetric matrix from its eigenvalues.
inline double spectral_norm(const EigenDecomposition& d) {
  if (d.values.empty()) return 0.0;
  return std::max(std::abs(d.values.front()), std::abs(d.values.back()));
}

namespace detail {

// Householder reduction to tridiagonal form (EISPACK tred2 ordering). On
// return z holds the accumulated orthogonal transform, d the diagonal and e
// the subdiagonal in e[1..n-1].
inline void tred2(std::vector<std::vector<double>>& z, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = z.size();
  for (std::size_t j = 0; j < n; ++j) d[j] = z[n - 1][j];
  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = z[i - 1][j];
        z[i][j] = 0.0;
        z[j][i] = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        z[j][i] = f;
        g = e[j] + z[j][j] * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += z[k][j] * d[k];
          e[k] += z[k][j] * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k <= i - 1; ++k) z[k][j] -= (f * e[k] + g * d[k]);
        d[j] = z[i - 1][j];
        z[i][j] = 0.0;
      }
    }
    d[i] = h;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    z[n - 1][i] = z[i][i];
    z[i][i] = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = z[k][i + 1] / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += z[k][i + 1] * z[k][j];
        for (std::size_t k = 0; k <= i; ++k) z[k][j] -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) z[k][i + 1] = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = z[n - 1][j];
    z[n - 1][j] = 0.0;
  }
  z[n - 1][n - 1] = 1.0;
  e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e), accumulating into z.
inline void tql2(std::vector<std::vector<double>>& z, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = z.size();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 60) throw ConvergenceError("symmetric_eigen: QL iteration did not converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;
        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          const std::size_t i = ii;
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (std::size_t k = 0; k < n; ++k) {
            h = z[k][i + 1];
            z[k][i + 1] = s * z[k][i] + c * h;
            z[k][i] = c * z[k][i] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

inline EigenDecomposition sorted(std::vector<double> values, const std::vector<std::vector<double>>& z) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = values[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors[k][i] = z[i][order[k]];
  }
  return out;
}

}  // namespace detail

/// Full eigendecomposition by Householder tridiagonalization and implicit QL.
inline EigenDecomposition symmetric_eigen(const SymmetricMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  std::vector<std::vector<double>> z(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z[i][j] = m(i, j);
  std::vector<double> d(n);
  std::vector<double> e(n);
  if (n == 1) {
    return {{m(0, 0)}, {{1.0}}};
  }
  detail::tred2(z, d, e);
  detail::tql2(z, d, e);
  return detail::sorted(std::move(d), z);
}

/// Cyclic Jacobi eigendecomposition; O(n^3) per sweep, meant for small
/// matrices and cross-checks.
inline EigenDecomposition jacobi_eigen(const SymmetricMatrix& m, int max_sweeps = 100) {
  const std::size_t n = m.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    v[i][i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  }
  const double total = m.frobenius_norm();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (std::sqrt(off) <= 1e-15 * total) {
      std::vector<double> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = a[i][i];
      return detail::sorted(std::move(d), v);
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  throw ConvergenceError("jacobi_eigen: off-diagonal mass did not vanish");
}

}  // namespace br2d::linalg
