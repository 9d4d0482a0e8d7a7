#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "laakso/errors.hpp"
#include "laakso/graph.hpp"
#include "laakso/rational.hpp"

namespace laakso {

/// Sparse (CSR) finite-difference Laplacian of an approximating graph.
/// The raw form reproduces the printed matrices M_{n,j}: diagonal 2/h^2,
/// off-diagonal -2*mult(u,v)/(deg(u)*h^2), Neumann reflection at the two
/// boundary columns. The symmetrized form is D^{1/2} M D^{-1/2} with
/// D = diag(degree), which is similar and symmetric.
struct LaplacianMatrix {
  std::int64_t dim = 0;
  std::vector<std::int64_t> row_ptr;
  std::vector<std::int32_t> col;
  std::vector<double> val;
  Rational h{1, 1};  // exact mesh width d_n
  bool symmetrized = false;
  std::vector<int> degree;  // vertex weights used in symmetrization

  double h2_inv() const {
    return static_cast<double>(h.den()) * static_cast<double>(h.den()) /
           (static_cast<double>(h.num()) * static_cast<double>(h.num()));
  }
  /// Gershgorin bound on the spectrum: all eigenvalues lie in [0, 4/h^2].
  double spectral_bound() const { return 4.0 * h2_inv(); }

  double at(std::int64_t r, std::int64_t c) const {
    for (std::int64_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p)
      if (col[p] == c) return val[p];
    return 0.0;
  }
};

inline LaplacianMatrix assemble_laplacian(const LaaksoGraph& g) {
  LaplacianMatrix m;
  m.dim = g.vertex_count();
  m.h = g.edge_length();
  m.degree.resize(static_cast<std::size_t>(m.dim));
  const double s = m.h2_inv();

  m.row_ptr.reserve(static_cast<std::size_t>(m.dim) + 1);
  m.row_ptr.push_back(0);
  for (std::int64_t u = 0; u < m.dim; ++u) {
    const int deg = g.degree(u);
    m.degree[u] = deg;
    // Row entries in ascending column order, diagonal in place.
    std::vector<std::pair<std::int32_t, double>> row;
    row.reserve(g.neighbors(u).size() + 1);
    for (const auto& nb : g.neighbors(u))
      row.push_back({nb.vertex, -2.0 * nb.multiplicity / (deg * 1.0) * s});
    row.push_back({static_cast<std::int32_t>(u), 2.0 * s});
    std::sort(row.begin(), row.end());
    for (const auto& [c, v] : row) {
      m.col.push_back(c);
      m.val.push_back(v);
    }
    m.row_ptr.push_back(static_cast<std::int64_t>(m.col.size()));
  }
  return m;
}

inline LaplacianMatrix symmetrize(const LaplacianMatrix& m) {
  if (m.symmetrized) return m;
  LaplacianMatrix s = m;
  s.symmetrized = true;
  for (std::int64_t r = 0; r < m.dim; ++r) {
    const double dr = std::sqrt(static_cast<double>(m.degree[r]));
    for (std::int64_t p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) {
      const std::int32_t c = m.col[p];
      if (c == r) continue;  // diagonal commutes with D
      s.val[p] = m.val[p] * dr / std::sqrt(static_cast<double>(m.degree[c]));
    }
  }
  return s;
}

/// y = M x over a contiguous row range.
inline void matvec_rows(const LaplacianMatrix& m, const double* x, double* y,
                        std::int64_t r0, std::int64_t r1) {
  for (std::int64_t r = r0; r < r1; ++r) {
    double acc = 0.0;
    for (std::int64_t p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p)
      acc += m.val[p] * x[m.col[p]];
    y[r] = acc;
  }
}

inline void matvec(const LaplacianMatrix& m, const double* x, double* y,
                   int threads = 1) {
  if (threads <= 1 || m.dim < 1 << 14) {
    matvec_rows(m, x, y, 0, m.dim);
    return;
  }
  std::vector<std::thread> pool;
  const std::int64_t chunk = (m.dim + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::int64_t r0 = t * chunk, r1 = std::min<std::int64_t>(m.dim, r0 + chunk);
    if (r0 >= r1) break;
    pool.emplace_back(matvec_rows, std::cref(m), x, y, r0, r1);
  }
  for (auto& th : pool) th.join();
}

inline std::vector<double> matvec(const LaplacianMatrix& m,
                                  const std::vector<double>& x) {
  if (static_cast<std::int64_t>(x.size()) != m.dim)
    throw DimensionMismatchError("matvec: vector length " +
                                 std::to_string(x.size()) + " vs dim " +
                                 std::to_string(m.dim));
  std::vector<double> y(x.size());
  matvec(m, x.data(), y.data());
  return y;
}

/// Matrix-free application generated directly from the graph structure,
/// bypassing CSR storage. Produces the same operator as assemble_laplacian
/// (+ symmetrize, when requested).
inline void matvec_matrix_free(const LaaksoGraph& g, const double* x, double* y,
                               bool symmetrized) {
  const std::int64_t dim = g.vertex_count();
  const Rational h = g.edge_length();
  const double s = static_cast<double>(h.den()) * static_cast<double>(h.den()) /
                   (static_cast<double>(h.num()) * static_cast<double>(h.num()));
  for (std::int64_t u = 0; u < dim; ++u) {
    const int deg = g.degree(u);
    double acc = 2.0 * s * x[u];
    const double du = std::sqrt(static_cast<double>(deg));
    for (const auto& nb : g.neighbors(u)) {
      double c = -2.0 * nb.multiplicity / (deg * 1.0) * s;
      if (symmetrized) c *= du / std::sqrt(static_cast<double>(g.degree(nb.vertex)));
      acc += c * x[nb.vertex];
    }
    y[u] = acc;
  }
}

/// Matrix-free application of `b` vectors stored interleaved (entry for
/// vertex u of vector q at x[u*b + q]). One neighbor walk serves all b
/// vectors with contiguous access, which is what the polynomial filter in
/// the eigensolver needs to amortize the structure traversal.
inline void matvec_matrix_free_interleaved(const LaaksoGraph& g,
                                           const double* x, double* y,
                                           bool symmetrized, int b) {
  const std::int64_t dim = g.vertex_count();
  const Rational h = g.edge_length();
  const double s = static_cast<double>(h.den()) * static_cast<double>(h.den()) /
                   (static_cast<double>(h.num()) * static_cast<double>(h.num()));
  for (std::int64_t u = 0; u < dim; ++u) {
    const int deg = g.degree(u);
    const double du = std::sqrt(static_cast<double>(deg));
    double* yu = y + u * b;
    const double* xu = x + u * b;
    for (int q = 0; q < b; ++q) yu[q] = 2.0 * s * xu[q];
    for (const auto& nb : g.neighbors(u)) {
      double c = -2.0 * nb.multiplicity / (deg * 1.0) * s;
      if (symmetrized)
        c *= du / std::sqrt(static_cast<double>(g.degree(nb.vertex)));
      const double* xv = x + static_cast<std::int64_t>(nb.vertex) * b;
      for (int q = 0; q < b; ++q) yu[q] += c * xv[q];
    }
  }
}

/// Generic symmetric operator handle for the eigensolvers. `apply` is one
/// vector; the optional variants serve block algorithms: `apply_block`
/// takes contiguous columns, `apply_interleaved` takes vertex-major
/// interleaved storage (vector q of vertex u at x[u*ncols + q]).
struct LinearOperator {
  std::int64_t dim = 0;
  double spectral_bound = 0.0;
  std::function<void(const double*, double*)> apply;
  std::function<void(const double*, double*, int)> apply_block;
  std::function<void(const double*, double*, int)> apply_interleaved;

  void apply_cols(const double* x, double* y, int ncols) const {
    if (apply_block) {
      apply_block(x, y, ncols);
      return;
    }
    for (int q = 0; q < ncols; ++q) apply(x + q * dim, y + q * dim);
  }
};

inline LinearOperator as_operator(const LaplacianMatrix& m, int threads = 1) {
  LinearOperator op;
  op.dim = m.dim;
  op.spectral_bound = m.spectral_bound();
  op.apply = [&m, threads](const double* x, double* y) {
    matvec(m, x, y, threads);
  };
  op.apply_block = [&m, threads](const double* x, double* y, int ncols) {
    for (int q = 0; q < ncols; ++q)
      matvec(m, x + q * m.dim, y + q * m.dim, threads);
  };
  return op;
}

inline LinearOperator as_matrix_free_operator(const LaaksoGraph& g,
                                              bool symmetrized = true) {
  LinearOperator op;
  op.dim = g.vertex_count();
  const Rational h = g.edge_length();
  const double s = static_cast<double>(h.den()) * static_cast<double>(h.den()) /
                   (static_cast<double>(h.num()) * static_cast<double>(h.num()));
  op.spectral_bound = 4.0 * s;
  op.apply = [&g, symmetrized](const double* x, double* y) {
    matvec_matrix_free(g, x, y, symmetrized);
  };
  op.apply_interleaved = [&g, symmetrized](const double* x, double* y,
                                           int ncols) {
    matvec_matrix_free_interleaved(g, x, y, symmetrized, ncols);
  };
  return op;
}

}  // namespace laakso
