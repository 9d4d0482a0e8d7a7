#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "laakso/errors.hpp"
#include "laakso/laplacian.hpp"

namespace laakso {

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  Eigen::MatrixXd eigenvectors;     // orthonormal columns, symmetrized basis
  std::vector<double> residuals;    // ||S v - lambda v|| per pair
  std::int64_t iterations = 0;
  std::string solver_kind;  // "dense" | "lanczos"
  bool converged = true;
};

/// Maps eigenvectors from the symmetrized basis back to the raw basis of
/// M = D^{-1/2} S D^{1/2}: right eigenvectors of M are D^{-1/2} v.
inline Eigen::MatrixXd to_raw_basis(const Eigen::MatrixXd& vecs,
                                    const std::vector<int>& degree) {
  Eigen::MatrixXd out = vecs;
  for (Eigen::Index r = 0; r < out.rows(); ++r)
    out.row(r) /= std::sqrt(static_cast<double>(degree[r]));
  return out;
}

namespace detail {

inline Eigen::MatrixXd to_dense(const LaplacianMatrix& s) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(s.dim, s.dim);
  for (std::int64_t r = 0; r < s.dim; ++r)
    for (std::int64_t p = s.row_ptr[r]; p < s.row_ptr[r + 1]; ++p)
      a(r, s.col[p]) += s.val[p];
  return a;
}

inline void fill_residuals(const LinearOperator& op, EigenResult& res) {
  const std::int64_t n = op.dim;
  std::vector<double> y(static_cast<std::size_t>(n));
  res.residuals.resize(res.eigenvalues.size());
  for (std::size_t i = 0; i < res.eigenvalues.size(); ++i) {
    op.apply(res.eigenvectors.col(static_cast<Eigen::Index>(i)).data(),
             y.data());
    double acc = 0;
    for (std::int64_t r = 0; r < n; ++r) {
      double d = y[r] - res.eigenvalues[i] * res.eigenvectors(r, i);
      acc += d * d;
    }
    res.residuals[i] = std::sqrt(acc);
  }
}

}  // namespace detail

/// Full spectrum of the symmetrized Laplacian by dense tridiagonalization.
/// Reference path for modest dimensions.
inline EigenResult solve_dense(const LaplacianMatrix& s,
                               std::int64_t dense_threshold = 2000) {
  if (!s.symmetrized)
    throw NotSymmetricError("solve_dense: pass the symmetrized matrix");
  if (s.dim > dense_threshold)
    throw TooLargeError("solve_dense: dimension " + std::to_string(s.dim) +
                        " above dense threshold");
  Eigen::MatrixXd a = detail::to_dense(s);
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * s.spectral_bound())
    throw NotSymmetricError("solve_dense: matrix not symmetric, deviation " +
                            std::to_string(asym));
  a = 0.5 * (a + a.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success)
    throw NoConvergenceError("solve_dense: eigensolver failed");
  EigenResult res;
  res.solver_kind = "dense";
  res.eigenvalues.assign(es.eigenvalues().data(),
                         es.eigenvalues().data() + s.dim);
  res.eigenvectors = es.eigenvectors();
  LinearOperator op = as_operator(s);
  detail::fill_residuals(op, res);
  return res;
}

struct LanczosOptions {
  int block = 8;                // start-block width
  double rel_tol = 1e-9;        // residual tolerance relative to 4/h^2
  std::int64_t max_basis = 0;   // 0 = choose from k
  int max_restarts = 150;
  int threads = 1;
  int verbose = 0;              // >0: per-pass diagnostics on stderr
  // Degree of the Chebyshev filter applied to expansion blocks (0 = off).
  // Filtering damps the spectrum above an adaptive cut so the lowest
  // eigenpairs converge in few passes even when they occupy a vanishing
  // fraction of the spectral range, at the price of `filter_degree`
  // operator applications per expansion vector. Pure operator applications:
  // works in matrix-free mode.
  int filter_degree = 0;
  // Optional upper bound on the k-th eigenvalue (0 = none). A tight bound,
  // e.g. a Weyl-law estimate with a safety factor, makes the filter sharp
  // from the first filtered pass; the adaptive Ritz-interlacing bound can
  // take many passes to descend to the right scale on its own.
  double filter_cut_hint = 0.0;
};

namespace detail {

/// Deterministic start block: column 0 of pass 0 is the pinned start vector
/// (component i proportional to 1 + (i mod 7)); the remaining columns vary
/// the stride and modulus deterministically.
inline Eigen::MatrixXd start_block(std::int64_t dim, int block, int pass) {
  Eigen::MatrixXd x(dim, block);
  for (int q = 0; q < block; ++q) {
    if (q == 0 && pass == 0) {
      for (std::int64_t i = 0; i < dim; ++i)
        x(i, q) = 1.0 + static_cast<double>(i % 7);
    } else {
      // Seeded per (pass, column): deterministic across runs, but with
      // generic overlap against every eigenvector, which the completeness
      // certification depends on.
      std::mt19937_64 rng(0x9E3779B97F4A7C15ull * (pass + 1) + q);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (std::int64_t i = 0; i < dim; ++i) x(i, q) = dist(rng);
    }
  }
  return x;
}

/// Orthonormalizes the columns of x against q (twice) and among themselves.
/// Returns the number of independent columns kept (prefix of x).
inline int orthonormalize(Eigen::MatrixXd& x, const Eigen::MatrixXd& basis,
                          Eigen::Index basis_cols,
                          const Eigen::MatrixXd& locked,
                          Eigen::Index locked_cols) {
  if (x.cols() == 0) return 0;
  const double scale0 = x.norm();
  if (!(scale0 > 0) || !std::isfinite(scale0)) return 0;
  // All matrix-level work so wide blocks stay in gemm. Two rounds of
  // (deflate against locked and basis, then Gram-matrix orthonormalization)
  // give CholeskyQR2-quality orthogonality with rank detection.
  Eigen::Index cols = x.cols();
  for (int round = 0; round < 2; ++round) {
    auto xb = x.leftCols(cols);
    if (locked_cols > 0)
      xb -= locked.leftCols(locked_cols) *
            (locked.leftCols(locked_cols).transpose() * xb);
    if (basis_cols > 0)
      xb -= basis.leftCols(basis_cols) *
            (basis.leftCols(basis_cols).transpose() * xb);
    Eigen::MatrixXd g = xb.transpose() * xb;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
    const double ev_max = ev(cols - 1);
    const double floor_sq =
        std::max(1e-12 * std::max(ev_max, 0.0),
                 1e-20 * scale0 * scale0 / static_cast<double>(x.cols()));
    Eigen::Index kept = 0;
    for (Eigen::Index i = 0; i < cols; ++i)
      if (ev(i) > floor_sq) ++kept;
    if (kept == 0) return 0;
    Eigen::MatrixXd y =
        xb * (es.eigenvectors().rightCols(kept) *
              ev.tail(kept).cwiseSqrt().cwiseInverse().asDiagonal());
    x.leftCols(kept) = y;
    cols = kept;
  }
  return static_cast<int>(cols);
}

/// In-place x <- p(S) x with p the degree-d Chebyshev polynomial of the
/// first kind mapped to [lo, hi] and normalized so p(0) = 1: |p| <= 1/|T_d|
/// on [lo, hi] while p grows monotonically toward 1 as lambda -> 0. Uses the
/// scaled three-term recurrence, so only operator applications are needed.
inline void cheb_filter(const LinearOperator& op, Eigen::MatrixXd& x, int degree,
                        double lo, double hi, std::int64_t& matvecs) {
  if (degree < 1 || x.cols() == 0) return;
  const double c = 0.5 * (hi + lo);
  const double e = 0.5 * (hi - lo);
  const double x0 = -c / e;  // image of 0, below -1
  const int b = static_cast<int>(x.cols());
  const std::int64_t dim = op.dim;
  // The scaling factors T_j(x0) overflow for sharp filters; the recurrence
  // only needs the bounded ratios r_j = T_j(x0)/T_{j+1}(x0), which satisfy
  // r_j = 1/(2 x0 - r_{j-1}).
  double r_prev = 1.0 / x0;  // T_0/T_1
  if (op.apply_interleaved && b > 1) {
    // Vertex-major interleaved storage: one structure walk serves all b
    // vectors, and the three-term recurrence is elementwise, so the layout
    // only matters at entry and exit.
    Eigen::ArrayXd y0(dim * b), y1(dim * b), my(dim * b);
    for (std::int64_t u = 0; u < dim; ++u)
      for (int q = 0; q < b; ++q) y0[u * b + q] = x(u, q);
    op.apply_interleaved(y0.data(), my.data(), b);
    matvecs += b;
    y1 = (my - c * y0) / (e * x0);
    for (int j = 1; j < degree; ++j) {
      const double r_cur = 1.0 / (2.0 * x0 - r_prev);
      op.apply_interleaved(y1.data(), my.data(), b);
      matvecs += b;
      my = ((my - c * y1) / e) * (2.0 * r_cur) - y0 * (r_prev * r_cur);
      y0.swap(y1);
      y1.swap(my);
      r_prev = r_cur;
    }
    for (std::int64_t u = 0; u < dim; ++u)
      for (int q = 0; q < b; ++q) x(u, q) = y1[u * b + q];
    return;
  }
  Eigen::MatrixXd y0 = x;
  Eigen::MatrixXd my(dim, b);
  op.apply_cols(y0.data(), my.data(), b);
  matvecs += b;
  Eigen::MatrixXd y1 = (my - c * y0) / (e * x0);
  for (int j = 1; j < degree; ++j) {
    const double r_cur = 1.0 / (2.0 * x0 - r_prev);  // T_j/T_{j+1}
    op.apply_cols(y1.data(), my.data(), b);
    matvecs += b;
    Eigen::MatrixXd y2 =
        ((my - c * y1) / e) * (2.0 * r_cur) - y0 * (r_prev * r_cur);
    y0.swap(y1);
    y1.swap(y2);
    r_prev = r_cur;
  }
  x = y1;
}

}  // namespace detail

/// k smallest eigenpairs of the symmetrized Laplacian via block Lanczos with
/// full reorthogonalization, locking of converged pairs, and deterministic
/// restarts. Works for any symmetric LinearOperator (stored or matrix-free).
inline EigenResult solve_lanczos(const LinearOperator& op, std::int64_t k,
                                 const LanczosOptions& opts = {}) {
  const std::int64_t dim = op.dim;
  if (k < 1 || k >= dim)
    throw DimensionMismatchError("solve_lanczos: need 1 <= k < dim");
  const double tol = opts.rel_tol * std::max(1.0, op.spectral_bound);
  const int block = static_cast<int>(
      std::min<std::int64_t>(std::max(1, opts.block), dim));
  std::int64_t max_basis = opts.max_basis;
  if (max_basis <= 0)
    max_basis = std::min<std::int64_t>(
        dim, std::max<std::int64_t>(4 * block, 2 * k + 2 * block));
  max_basis = std::max<std::int64_t>(max_basis, 2 * block);

  Eigen::Index cap = static_cast<Eigen::Index>(
      std::min<std::int64_t>(dim, k + 4 * block + 16));
  Eigen::MatrixXd locked(dim, cap);
  std::vector<double> locked_vals;
  Eigen::Index nlocked = 0;
  std::int64_t matvecs = 0;
  bool complete = false;

  Eigen::MatrixXd basis(dim, max_basis + block);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(max_basis + block, max_basis + block);

  // Thick restart: the next pass keeps the lowest unconverged Ritz vectors
  // of the previous one (empty = deterministic fresh block), so polynomial
  // degree accumulates across passes like an unrestarted recurrence.
  Eigen::MatrixXd restart(dim, 0);
  int fresh_pass = 0;
  int fruitless = 0;
  const double cert_eps = 1e-8 * std::max(1.0, op.spectral_bound);
  // A stream may certify completeness only if its start block was drawn
  // fresh while k values were already locked and it has locked nothing
  // since: a Krylov stream holds at most `block` independent components of
  // any eigenspace, so once it extracts copies of a cluster it is blind to
  // the remaining ones, while a fresh random block orthogonal to the locked
  // set sees the smallest remaining eigenvalue first. Thick restarts of
  // such a stream stay within the same Krylov space and keep the property.
  bool verify_chain = false;
  // Adaptive Chebyshev cut: an upper bound on the k-th eigenvalue with a
  // two-block margin, refreshed from each pass's Ritz values (interlacing
  // makes Ritz values upper bounds). 0 until the first Ritz analysis, which
  // keeps the first pass unfiltered unless a hint is given.
  double filter_cut = opts.filter_cut_hint > 0.0 ? opts.filter_cut_hint : 0.0;

  for (int pass = 0; pass < opts.max_restarts && !complete; ++pass) {
    if (nlocked >= static_cast<Eigen::Index>(dim)) {
      complete = nlocked >= static_cast<Eigen::Index>(k);
      break;
    }
    const bool verifying = nlocked >= static_cast<Eigen::Index>(k);
    if (verifying && !verify_chain) {
      restart.resize(dim, 0);  // start a fresh certification stream
      verify_chain = true;
    } else if (!verifying) {
      verify_chain = false;
    }
    Eigen::MatrixXd x =
        restart.cols() > 0 ? restart : detail::start_block(dim, block, fresh_pass++);
    // Davidson-style refinement: pass the whole start block (retained Ritz
    // vectors included) through the filter, so the high-end contamination of
    // every basis vector shrinks by the filter's damping factor each pass.
    // The Ritz projection is recomputed from explicit S*X products either
    // way, so this only accelerates convergence, never biases values.
    if (opts.filter_degree > 0 && filter_cut > 0.0)
      detail::cheb_filter(op, x, opts.filter_degree, filter_cut,
                          op.spectral_bound, matvecs);
    int bw = detail::orthonormalize(x, basis, 0, locked, nlocked);
    if (bw == 0) {
      // Start columns exhausted; perturb via pass-shifted stride.
      x = detail::start_block(dim, block, 101 + fresh_pass++);
      bw = detail::orthonormalize(x, basis, 0, locked, nlocked);
      if (bw == 0) {
        // The orthogonal complement of the locked set is exhausted.
        complete = nlocked >= static_cast<Eigen::Index>(k);
        break;
      }
    }
    restart.resize(dim, 0);
    Eigen::Index m = 0;
    basis.middleCols(m, bw) = x.leftCols(bw);
    m += bw;
    h.setZero();

    // Grow the Krylov basis block by block with full reorthogonalization;
    // the projected matrix comes from the Gram-Schmidt coefficients.
    while (true) {
      const Eigen::Index j0 = m - bw;
      Eigen::MatrixXd w(dim, bw);
      op.apply_cols(basis.col(j0).data(), w.data(), bw);
      matvecs += bw;
      const Eigen::MatrixXd sw = w;  // S * X_j, kept for the coupling block
      if (nlocked > 0)
        w -= locked.leftCols(nlocked) *
             (locked.leftCols(nlocked).transpose() * w);
      Eigen::MatrixXd coef = basis.leftCols(m).transpose() * w;
      w -= basis.leftCols(m) * coef;
      // Second sweep for orthogonality; fold corrections into the
      // projection coefficients.
      Eigen::MatrixXd coef2 = basis.leftCols(m).transpose() * w;
      w -= basis.leftCols(m) * coef2;
      coef += coef2;
      h.block(0, j0, m, bw) = coef;
      h.block(j0, 0, bw, m) = coef.transpose();

      // Extend by up to a block, shrinking at the basis or complement cap so
      // small budgets still advance the factorization.
      // A certification pass only needs its first Ritz pair converged, so a
      // short basis suffices; full width would just re-pay the filter cost.
      const std::int64_t mb_pass =
          verifying ? std::min<std::int64_t>(max_basis, 4 * block) : max_basis;
      const Eigen::Index avail =
          static_cast<Eigen::Index>(std::min<std::int64_t>(mb_pass,
                                                           dim - nlocked)) -
          m;
      int bw_next = 0;
      if (avail > 0) {
        bw_next = detail::orthonormalize(w, basis, m, locked, nlocked);
        // A restarted pass opens with a wide block of retained Ritz vectors;
        // their joint residual has rank at most the old block width, and the
        // recurrence continues at the configured width.
        bw_next = std::min<int>(bw_next, block);
        bw_next = std::min<int>(bw_next, static_cast<int>(avail));
        if (bw_next > 0 && opts.filter_degree > 0 && filter_cut > 0.0) {
          // Rotate the new directions toward the lowest part of the
          // spectrum before admitting them. The projected matrix stays the
          // exact projection of S (every admitted block gets explicit
          // S-products below), so Rayleigh-Ritz is unaffected; the filter
          // only changes which directions enrich the subspace.
          Eigen::MatrixXd f = w.leftCols(bw_next);
          detail::cheb_filter(op, f, opts.filter_degree, filter_cut,
                              op.spectral_bound, matvecs);
          const int kept =
              detail::orthonormalize(f, basis, m, locked, nlocked);
          if (kept > 0) {
            bw_next = std::min<int>(kept, bw_next);
            w.leftCols(bw_next) = f.leftCols(bw_next);
          }
          // kept == 0: the filtered block collapsed into the current
          // subspace; keep the unfiltered Krylov directions.
        }
        if (bw_next > 0) {
          for (int c = 0; c < bw_next; ++c)
            basis.col(m + c) = w.col(c);
          // Coupling block beta = w_orth^T * (S * X_j), from the product
          // saved before deflation.
          Eigen::MatrixXd beta =
              basis.middleCols(m, bw_next).transpose() * sw;
          h.block(m, j0, bw_next, bw) = beta;
          h.block(j0, m, bw, bw_next) = beta.transpose();
        }
      }

      const bool last = bw_next == 0;
      // Ritz analysis at the end of the factorization.
      if (last) {
        Eigen::MatrixXd hs = 0.5 * (h.topLeftCorner(m, m) +
                                    h.topLeftCorner(m, m).transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hs);
        const Eigen::VectorXd& theta = es.eigenvalues();
        const Eigen::MatrixXd& z = es.eigenvectors();
        if (opts.filter_degree > 0) {
          // Merge locked values with the current Ritz values and bound
          // lambda_{k+2b} from above.
          std::vector<double> merged(locked_vals);
          for (Eigen::Index i = 0; i < m; ++i) merged.push_back(theta(i));
          std::sort(merged.begin(), merged.end());
          const std::size_t idx = std::min<std::size_t>(
              merged.size() - 1, static_cast<std::size_t>(k - 1 + 2 * block));
          filter_cut = std::max(merged[idx], 1e-8 * op.spectral_bound);
          if (opts.filter_cut_hint > 0.0)
            filter_cut = std::min(filter_cut, opts.filter_cut_hint);
        }
        // Lock every converged candidate Ritz pair (explicit residual
        // check), not just a leading prefix: with filtered restarts a
        // single straggler must not force the already-converged vectors
        // back through another full filter pass. Completeness is not taken
        // from locking order; it rests on the certification stream below,
        // and the final assembly sorts the locked set. Candidates are the
        // pairs that could still matter for reaching k, plus a cluster
        // buffer.
        Eigen::Index locked_this_pass = 0;
        std::vector<Eigen::Index> open;  // unconverged candidates, theta asc.
        std::vector<double> y(static_cast<std::size_t>(dim));
        // Materialize candidate Ritz vectors in chunks so the basis-times-z
        // products run as matrix products instead of per-vector ones.
        const Eigen::Index chunk = 32;
        Eigen::MatrixXd vblock;
        Eigen::Index vlo = 0, vhi = 0;
        double theta0_resid = -1.0;
        const Eigen::Index ncand = std::min<Eigen::Index>(
            m, static_cast<Eigen::Index>(std::max<std::int64_t>(
                   static_cast<std::int64_t>(k) - nlocked, 0)) +
                   2 * block);
        for (Eigen::Index i = 0; i < ncand; ++i) {
          if (nlocked >= cap) {
            if (cap >= static_cast<Eigen::Index>(dim)) break;
            cap = static_cast<Eigen::Index>(
                std::min<std::int64_t>(dim, cap + 4 * block));
            locked.conservativeResize(Eigen::NoChange, cap);
          }
          if (i >= vhi) {
            vlo = i;
            vhi = std::min<Eigen::Index>(ncand, i + chunk);
            vblock = basis.leftCols(m) * z.middleCols(vlo, vhi - vlo);
          }
          Eigen::VectorXd v = vblock.col(i - vlo);
          v.normalize();
          op.apply(v.data(), y.data());
          ++matvecs;
          double rnorm = 0;
          for (std::int64_t r = 0; r < dim; ++r) {
            const double d = y[r] - theta(i) * v(r);
            rnorm += d * d;
          }
          rnorm = std::sqrt(rnorm);
          if (i == 0) theta0_resid = rnorm;
          if (rnorm > tol) {
            open.push_back(i);
            continue;
          }
          // Only the first Ritz value of a fresh verification pass can
          // certify: it alone approximates the smallest eigenvalue of the
          // complement. Later converged values in the same pass are again
          // limited to `block` copies per cluster and could skip members.
          if (verify_chain && i == 0) {
            std::vector<double> sorted(locked_vals);
            std::sort(sorted.begin(), sorted.end());
            const double kth = sorted[static_cast<std::size_t>(k - 1)];
            if (theta(i) >= kth - cert_eps) {
              complete = true;
              break;
            }
          }
          locked.col(nlocked) = v;
          locked_vals.push_back(theta(i));
          ++nlocked;
          ++locked_this_pass;
        }

        if (opts.verbose > 0)
          std::fprintf(stderr,
                       "lanczos pass %d: m=%lld nlocked=%lld (+%lld) "
                       "verify=%d complete=%d theta0=%.6g r0=%.3g cut=%.4g "
                       "max_basis=%lld matvecs=%lld\n",
                       pass, static_cast<long long>(m),
                       static_cast<long long>(nlocked),
                       static_cast<long long>(locked_this_pass),
                       verifying ? 1 : 0, complete ? 1 : 0,
                       m > 0 ? theta(0) : 0.0, theta0_resid, filter_cut,
                       static_cast<long long>(max_basis),
                       static_cast<long long>(matvecs));

        if (!complete) {
          // Keep the lowest unconverged Ritz vectors: enough to cover the
          // still-missing pairs plus a buffer, while leaving expansion room.
          // Locked pairs never re-enter the restart, so late stragglers
          // shrink the filtered block instead of re-running all of it.
          const std::int64_t want =
              (k - static_cast<std::int64_t>(nlocked)) + 2 * block;
          const Eigen::Index nr = std::min<Eigen::Index>(
              static_cast<Eigen::Index>(open.size()),
              static_cast<Eigen::Index>(std::max<std::int64_t>(
                  block,
                  std::min<std::int64_t>(want, max_basis - 2 * block))));
          if (nr > 0) {
            Eigen::MatrixXd zsel(m, nr);
            for (Eigen::Index t = 0; t < nr; ++t)
              zsel.col(t) = z.col(open[static_cast<std::size_t>(t)]);
            restart = basis.leftCols(m) * zsel;
          }
          if (locked_this_pass == 0) {
            ++fruitless;
            // Passes that lock nothing still deepen the recurrence through
            // the retained subspace; only widen the basis after several in
            // a row.
            if (fruitless % 4 == 0) {
              max_basis = std::min<std::int64_t>(
                  dim, std::max<std::int64_t>(max_basis + 2 * block,
                                              max_basis * 3 / 2));
              if (basis.cols() < max_basis + block) {
                basis.conservativeResize(Eigen::NoChange, max_basis + block);
                Eigen::MatrixXd h2 = Eigen::MatrixXd::Zero(max_basis + block,
                                                           max_basis + block);
                h2.topLeftCorner(h.rows(), h.cols()) = h;
                h = h2;
              }
            }
          } else {
            fruitless = 0;
            // A certification stream that extracted new pairs can no longer
            // witness completeness; the next verifying pass starts fresh.
            if (verify_chain) {
              verify_chain = false;
              restart.resize(dim, 0);
            }
          }
        }
        break;
      }
      bw = bw_next;
      m += bw;
    }
  }

  // Assemble result: k smallest locked pairs, ascending, ties stable.
  std::vector<std::size_t> order(locked_vals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return locked_vals[a] < locked_vals[b];
  });
  const std::int64_t nout = std::min<std::int64_t>(k, nlocked);
  EigenResult res;
  res.solver_kind = "lanczos";
  res.iterations = matvecs;
  res.converged = complete && nout == k;
  res.eigenvalues.resize(static_cast<std::size_t>(nout));
  res.eigenvectors.resize(dim, nout);
  for (std::int64_t i = 0; i < nout; ++i) {
    res.eigenvalues[static_cast<std::size_t>(i)] = locked_vals[order[i]];
    res.eigenvectors.col(i) = locked.col(static_cast<Eigen::Index>(order[i]));
  }
  detail::fill_residuals(op, res);
  if (!res.converged && nout < k)
    throw NoConvergenceError("solve_lanczos: locked only " +
                             std::to_string(nout) + " of " + std::to_string(k) +
                             " pairs");
  return res;
}

inline EigenResult solve_lanczos(const LaplacianMatrix& s, std::int64_t k,
                                 const LanczosOptions& opts = {}) {
  if (!s.symmetrized)
    throw NotSymmetricError("solve_lanczos: pass the symmetrized matrix");
  LinearOperator op = as_operator(s, opts.threads);
  return solve_lanczos(op, k, opts);
}

}  // namespace laakso
