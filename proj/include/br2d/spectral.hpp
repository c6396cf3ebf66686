#pragma once

// Nystrom discretization of the channel forms
//   <a, b_k a> = int e(r) |a|^2 dr - (delta/pi) int int a(r) a(r') K_k(r, r') dr dr'
// in the symmetrized variable g_i = sqrt(w_i) a(p_i), lowest eigenvalues,
// Rayleigh quotients and coupling sweeps.

#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <memory>
#include <numbers>
#include <thread>
#include <vector>

#include "br2d/error.hpp"
#include "br2d/grid.hpp"
#include "br2d/kernel.hpp"
#include "br2d/linalg.hpp"

namespace br2d {

/// Symmetrized kernel part of a channel form: sqrt(w_i w_j) K_k(p_i, p_j)
/// off the diagonal and the cell-averaged self-interaction on it. Independent
/// of the coupling, so one kernel serves a whole sweep.
struct KernelMatrix {
  std::shared_ptr<const RadialGrid> grid;
  Channel channel;
  linalg::SymmetricMatrix matrix;
};

namespace detail {

// Runs body(i) for i in [0, n), split over `threads` workers by interleaved rows.
inline void parallel_rows(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// Kernel matrices for several channels on one grid. Off-diagonal entries of
/// all channels share a single Legendre sequence per node pair; each row is
/// written by exactly one worker.
inline std::vector<KernelMatrix> assemble_kernels(std::shared_ptr<const RadialGrid> grid,
                                                  const std::vector<Channel>& channels,
                                                  unsigned threads = 1) {
  if (!grid) throw PreconditionError("assemble_kernels: null grid");
  const std::size_t n = grid->size();
  std::vector<KernelMatrix> out;
  for (const Channel& ch : channels) out.push_back({grid, ch, linalg::SymmetricMatrix(n)});
  const auto& p = grid->nodes;
  const auto& w = grid->weights;
  detail::parallel_rows(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::vector<double> k = channel_kernels(channels, p[i], p[j]);
      const double scale = std::sqrt(w[i] * w[j]);
      for (std::size_t c = 0; c < channels.size(); ++c) {
        out[c].matrix(i, j) = scale * k[c];
        out[c].matrix(j, i) = scale * k[c];
      }
    }
    for (std::size_t c = 0; c < channels.size(); ++c) {
      out[c].matrix(i, i) = diagonal_cell_weight(*grid, i, channels[c]);
    }
  });
  return out;
}

inline KernelMatrix assemble_kernel(std::shared_ptr<const RadialGrid> grid, Channel ch,
                                    unsigned threads = 1) {
  return std::move(assemble_kernels(std::move(grid), {ch}, threads).front());
}

/// Symmetric matrix of b_k at coupling delta in the variable g = sqrt(w) a.
struct ChannelForm {
  double delta = 0.0;
  Channel channel;
  std::shared_ptr<const RadialGrid> grid;
  linalg::SymmetricMatrix matrix;
};

/// M = diag(e(p_i)) - (delta/pi) * kernel.
inline ChannelForm form_from_kernel(const KernelMatrix& kernel, double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw PreconditionError("assemble_form: delta must be >= 0");
  const std::size_t n = kernel.matrix.size();
  ChannelForm form{delta, kernel.channel, kernel.grid, linalg::SymmetricMatrix(n)};
  const double c = delta / std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) form.matrix(i, j) = -c * kernel.matrix(i, j);
    form.matrix(i, i) += energy(kernel.grid->nodes[i]);
  }
  return form;
}

inline ChannelForm assemble_form(std::shared_ptr<const RadialGrid> grid, Channel ch, double delta,
                                 unsigned threads = 1) {
  return form_from_kernel(assemble_kernel(std::move(grid), ch, threads), delta);
}

inline ChannelForm assemble_form(const RadialGrid& grid, Channel ch, double delta, unsigned threads = 1) {
  return assemble_form(std::make_shared<const RadialGrid>(grid), ch, delta, threads);
}

struct SpectralReport {
  double delta = 0.0;
  int k = 0;
  std::size_t n = 0;
  GridSpec grid;
  double lambda_min = 0.0;
  double residual = 0.0;
  double matrix_norm = 0.0;
  /// Squared weight of the lowest eigenvector on nodes above p_max/10; a
  /// large value means the truncation is felt.
  double edge_mass = 0.0;
  std::vector<double> eigenvector;
};

inline SpectralReport lowest_eigenvalue(const ChannelForm& form) {
  const linalg::EigenDecomposition dec = linalg::symmetric_eigen(form.matrix);
  SpectralReport r;
  r.delta = form.delta;
  r.k = form.channel.k;
  r.n = form.matrix.size();
  r.grid = form.grid->spec;
  r.lambda_min = dec.values.front();
  r.eigenvector = dec.vectors.front();
  r.matrix_norm = linalg::spectral_norm(dec);
  r.residual = linalg::eigen_residual(form.matrix, r.lambda_min, r.eigenvector);
  if (!(r.residual <= 1e-8 * r.matrix_norm)) {
    throw ConvergenceError("lowest_eigenvalue: eigen-residual above 1e-8 of the matrix norm");
  }
  const double edge = form.grid->spec.p_max / 10.0;
  for (std::size_t i = 0; i < r.n; ++i) {
    if (form.grid->nodes[i] > edge) r.edge_mass += r.eigenvector[i] * r.eigenvector[i];
  }
  return r;
}

/// g^T M g / g^T g.
inline double rayleigh_quotient(const ChannelForm& form, const std::vector<double>& g) {
  if (g.size() != form.matrix.size()) throw PreconditionError("rayleigh_quotient: size mismatch");
  const double nn = linalg::dot(g, g);
  if (!(nn > 0.0)) throw PreconditionError("rayleigh_quotient: zero vector");
  return linalg::dot(g, form.matrix.multiply(g)) / nn;
}

/// g^T M g, the discretized value of <f, b_k f> for g = sample_on_grid(f).
inline double form_value(const ChannelForm& form, const std::vector<double>& g) {
  if (g.size() != form.matrix.size()) throw PreconditionError("form_value: size mismatch");
  return linalg::dot(g, form.matrix.multiply(g));
}

/// g_i = sqrt(w_i) f(p_i).
template <class F>
std::vector<double> sample_on_grid(const RadialGrid& grid, F&& f) {
  std::vector<double> g(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) g[i] = std::sqrt(grid.weights[i]) * f(grid.nodes[i]);
  return g;
}

/// One report per coupling, all sharing one kernel assembly.
inline std::vector<SpectralReport> delta_sweep(const KernelMatrix& kernel, const std::vector<double>& deltas) {
  if (deltas.empty()) throw PreconditionError("delta_sweep: empty coupling list");
  std::vector<SpectralReport> rows;
  rows.reserve(deltas.size());
  for (double d : deltas) rows.push_back(lowest_eigenvalue(form_from_kernel(kernel, d)));
  return rows;
}

inline std::vector<SpectralReport> delta_sweep(std::shared_ptr<const RadialGrid> grid, Channel ch,
                                               const std::vector<double>& deltas, unsigned threads = 1) {
  if (deltas.empty()) throw PreconditionError("delta_sweep: empty coupling list");
  return delta_sweep(assemble_kernel(std::move(grid), ch, threads), deltas);
}

}  // namespace br2d
