#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "laakso/eigensolver.hpp"
#include "oracles.hpp"

using namespace laakso;

namespace {
JSequence jc(int j) { return JSequence::constant(j); }

LaplacianMatrix sym_laplacian(int j, int n) {
  return symmetrize(assemble_laplacian(build_graph(jc(j), n)));
}
}  // namespace

TEST_CASE("dense: 5x5 fixture spectrum {0, 8, 8, 8, 16}") {
  EigenResult r = solve_dense(sym_laplacian(2, 1));
  const double expect[5] = {0, 8, 8, 8, 16};
  for (int i = 0; i < 5; ++i)
    CHECK(r.eigenvalues[i] == doctest::Approx(expect[i]).epsilon(1e-10).scale(16));
  for (double res : r.residuals) CHECK(res <= 1e-10 * 16);
}

TEST_CASE("dense: path of 9 nodes, h=1/8, second eigenvalue 128(1-cos(pi/8))") {
  EigenResult r =
      solve_dense(symmetrize(laakso_test::path_laplacian(8, Rational(1, 8))));
  const double expect = 128.0 * (1.0 - std::cos(std::numbers::pi / 8.0));
  CHECK(r.eigenvalues[1] == doctest::Approx(expect).epsilon(1e-12).scale(512));
}

TEST_CASE("dense: rejects a raw (non-symmetric) matrix") {
  LaplacianMatrix raw = assemble_laplacian(build_graph(jc(2), 1));
  CHECK_THROWS_AS(solve_dense(raw), NotSymmetricError);
}

TEST_CASE("dense: eigenvector orthonormality") {
  EigenResult r = solve_dense(sym_laplacian(2, 2));
  const Eigen::MatrixXd gram =
      r.eigenvectors.transpose() * r.eigenvectors -
      Eigen::MatrixXd::Identity(r.eigenvectors.cols(), r.eigenvectors.cols());
  CHECK(gram.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("lanczos: k=1 finds the Neumann kernel with constant raw direction") {
  LaplacianMatrix s = sym_laplacian(2, 2);
  EigenResult r = solve_lanczos(s, 1);
  CHECK(std::abs(r.eigenvalues[0]) <= 1e-8);
  Eigen::MatrixXd raw = to_raw_basis(r.eigenvectors, s.degree);
  const double first = raw(0, 0);
  for (Eigen::Index i = 0; i < raw.rows(); ++i)
    CHECK(raw(i, 0) == doctest::Approx(first).epsilon(1e-8).scale(1.0));
}

TEST_CASE("lanczos agrees with dense on fixtures") {
  for (auto [j, n, k] : {std::tuple{2, 3, 10}, {3, 2, 12}, {2, 4, 20}}) {
    CAPTURE(j);
    CAPTURE(n);
    LaplacianMatrix s = sym_laplacian(j, n);
    EigenResult dense = solve_dense(s);
    EigenResult lz = solve_lanczos(s, k);
    REQUIRE(static_cast<int>(lz.eigenvalues.size()) == k);
    for (int i = 0; i < k; ++i)
      CHECK(lz.eigenvalues[i] == doctest::Approx(dense.eigenvalues[i])
                                     .epsilon(1e-8)
                                     .scale(s.spectral_bound()));
    for (double res : lz.residuals) CHECK(res <= 1e-9 * s.spectral_bound());
  }
}

TEST_CASE("lanczos: n=3 j=2 spectrum contains the two pictured eigenvalues") {
  EigenResult r = solve_lanczos(sym_laplacian(2, 3), 10);
  auto contains_near = [&](double target, double tol) {
    for (double v : r.eigenvalues)
      if (std::abs(v - target) <= tol) return true;
    return false;
  };
  CHECK(contains_near(9.74, 0.01));
  CHECK(contains_near(37.49, 0.01));
}

TEST_CASE("lanczos is deterministic") {
  LaplacianMatrix s = sym_laplacian(2, 3);
  EigenResult a = solve_lanczos(s, 8);
  EigenResult b = solve_lanczos(s, 8);
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i)
    CHECK(a.eigenvalues[i] == b.eigenvalues[i]);  // bitwise
}

TEST_CASE("zero eigenvalue has numeric multiplicity one") {
  for (auto [j, n] : {std::pair{2, 3}, {3, 2}}) {
    EigenResult r = solve_dense(sym_laplacian(j, n));
    int zeros = 0;
    for (double v : r.eigenvalues)
      if (std::abs(v) < 1e-6) ++zeros;
    CHECK(zeros == 1);
  }
}

TEST_CASE("lanczos resolves a degenerate cluster wider than the block") {
  // n=4, j=2: the 16 pi^2 analytic cluster has multiplicity 18; ask for
  // enough pairs that the solver must dig the whole cluster out.
  LaplacianMatrix s = sym_laplacian(2, 4);  // dim 152
  EigenResult dense = solve_dense(s);
  const std::int64_t k = 40;
  LanczosOptions opts;
  opts.block = 4;  // force several deflation rounds
  EigenResult lz = solve_lanczos(s, k, opts);
  for (std::int64_t i = 0; i < k; ++i)
    CHECK(lz.eigenvalues[i] == doctest::Approx(dense.eigenvalues[i])
                                   .epsilon(1e-8)
                                   .scale(s.spectral_bound()));
}

TEST_CASE("lanczos input validation") {
  LaplacianMatrix s = sym_laplacian(2, 1);
  CHECK_THROWS_AS(solve_lanczos(s, 0), DimensionMismatchError);
  CHECK_THROWS_AS(solve_lanczos(s, 5), DimensionMismatchError);
  LaplacianMatrix raw = assemble_laplacian(build_graph(jc(2), 1));
  CHECK_THROWS_AS(solve_lanczos(raw, 2), NotSymmetricError);
}

TEST_CASE("matrix-free operator drives the solver identically") {
  LaaksoGraph g = build_graph(jc(2), 3);
  LaplacianMatrix s = symmetrize(assemble_laplacian(g));
  EigenResult stored = solve_lanczos(s, 6);
  EigenResult free = solve_lanczos(as_matrix_free_operator(g, true), 6);
  for (int i = 0; i < 6; ++i)
    CHECK(stored.eigenvalues[i] == doctest::Approx(free.eigenvalues[i])
                                       .epsilon(1e-10)
                                       .scale(s.spectral_bound()));
}

TEST_CASE("chebyshev-filtered expansion agrees with the dense solver") {
  // Filtering only rotates the expansion directions; the Ritz projection
  // is still of S itself, so filtered and dense answers must coincide.
  LaaksoGraph g = build_graph(jc(2), 4);
  LaplacianMatrix s = symmetrize(assemble_laplacian(g));
  EigenResult dense = solve_dense(s);
  const std::int64_t k = 12;
  LanczosOptions opts;
  opts.block = 4;
  opts.filter_degree = 40;
  opts.filter_cut_hint = 1.5 * dense.eigenvalues[k - 1];
  EigenResult lz = solve_lanczos(as_matrix_free_operator(g, true), k, opts);
  CHECK(lz.converged);
  for (std::int64_t i = 0; i < k; ++i)
    CHECK(lz.eigenvalues[i] == doctest::Approx(dense.eigenvalues[i])
                                   .epsilon(1e-8)
                                   .scale(s.spectral_bound()));
}

TEST_CASE("interleaved block matvec matches the single-vector kernel") {
  LaaksoGraph g = build_graph(jc(3), 3);
  const std::int64_t d = g.vertex_count();
  const int b = 5;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> cols(d * b), xi(d * b), yi(d * b), yc(d);
  for (double& v : cols) v = u(rng);
  for (std::int64_t v = 0; v < d; ++v)
    for (int q = 0; q < b; ++q) xi[v * b + q] = cols[q * d + v];
  matvec_matrix_free_interleaved(g, xi.data(), yi.data(), true, b);
  for (int q = 0; q < b; ++q) {
    matvec_matrix_free(g, cols.data() + q * d, yc.data(), true);
    for (std::int64_t v = 0; v < d; ++v)
      CHECK(yi[v * b + q] == doctest::Approx(yc[v]).epsilon(1e-14));
  }
}
