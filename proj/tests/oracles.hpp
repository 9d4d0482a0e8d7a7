// Test-only independent oracles. These deliberately avoid the library's
// construction and spectrum paths so they can cross-check them.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "laakso/jsequence.hpp"
#include "laakso/laplacian.hpp"
#include "laakso/rational.hpp"

namespace laakso_test {

// --- grid enumeration oracle for F_n -------------------------------------
// Enumerates the full 2^n x (J_n + 1) sheet/column grid, applies the wormhole
// identification with union-find, and counts classes, edges, and degrees.

struct GridCounts {
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  std::map<int, std::int64_t> degree_histogram;
  std::int64_t boundary_vertices = 0;
};

inline GridCounts grid_oracle(const laakso::JSequence& js, int n) {
  const std::int64_t J = js.big_j(n);
  const std::int64_t sheets = std::int64_t{1} << n;
  const std::int64_t total = sheets * (J + 1);
  std::vector<std::int64_t> parent(static_cast<std::size_t>(total));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::int64_t(std::int64_t)> find = [&](std::int64_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](std::int64_t a, std::int64_t b) {
    parent[find(a)] = find(b);
  };
  auto node = [&](std::int64_t c, std::int64_t w) { return c * sheets + w; };

  auto level_of = [&](std::int64_t c) {
    if (c == 0 || c == J) return 0;
    std::int64_t cc = c;
    int m = n;
    while (m >= 1 && cc % js.j(m) == 0) {
      cc /= js.j(m);
      --m;
    }
    return m;
  };

  for (std::int64_t c = 1; c < J; ++c) {
    const int m = level_of(c);
    for (std::int64_t w = 0; w < sheets; ++w)
      unite(node(c, w), node(c, w ^ (std::int64_t{1} << (m - 1))));
  }

  GridCounts out;
  std::map<std::int64_t, std::int64_t> degree;  // class root -> degree
  for (std::int64_t c = 0; c < J; ++c)
    for (std::int64_t w = 0; w < sheets; ++w) {
      ++out.edges;
      ++degree[find(node(c, w))];
      ++degree[find(node(c + 1, w))];
    }
  for (std::int64_t c = 0; c <= J; ++c)
    for (std::int64_t w = 0; w < sheets; ++w)
      if (find(node(c, w)) == node(c, w)) {
        ++out.vertices;
        if (c == 0 || c == J) ++out.boundary_vertices;
        ++out.degree_histogram[static_cast<int>(degree[node(c, w)])];
      }
  return out;
}

// --- star-graph transcendental oracle -------------------------------------
// Eigenvalues of the 4-arm Dirichlet cross of arm length d by root-finding
// the matching conditions directly: sin(omega d) = 0 gives multiplicity 3,
// cos(omega d) = 0 gives multiplicity 1. Returns a map lambda/pi^2 ->
// multiplicity with rational keys (values are snapped and verified).

inline std::map<laakso::Rational, std::int64_t> star_oracle(
    const laakso::Rational& d, double lambda_max) {
  using laakso::Rational;
  const double pi = 3.14159265358979323846;
  const double dd = d.to_double();
  const double omega_max = std::sqrt(lambda_max) + 1e-9;
  std::map<Rational, std::int64_t> out;

  auto bisect = [&](auto&& f, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      if ((f(lo) < 0) == (f(mid) < 0))
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  auto snap = [&](double omega, std::int64_t mult) {
    // All roots have r = (omega/pi)^2 with 4 d^2 r an integer.
    const double r = (omega / pi) * (omega / pi);
    const double scaled = r * 4.0 * dd * dd;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-6)
      throw laakso::Error("star_oracle: root does not snap to the lattice");
    // r = rounded / (4 d^2)
    Rational key = Rational(static_cast<std::int64_t>(rounded), 4) *
                   Rational(d.den(), d.num()) * Rational(d.den(), d.num());
    out[key] += mult;
  };

  const int steps = 200000;
  auto scan = [&](auto&& f, std::int64_t mult) {
    double prev_w = 1e-9, prev_f = f(prev_w);
    for (int i = 1; i <= steps; ++i) {
      const double w = omega_max * i / steps;
      const double fw = f(w);
      if ((prev_f < 0) != (fw < 0)) snap(bisect(f, prev_w, w), mult);
      prev_w = w;
      prev_f = fw;
    }
  };
  scan([&](double w) { return std::sin(w * dd); }, 3);
  scan([&](double w) { return std::cos(w * dd); }, 1);
  return out;
}

// --- uniform path Laplacian ------------------------------------------------
// The three-point Neumann chain on p+1 nodes with mesh h; dispersion oracle
// eigenvalues are (2/h^2)(1 - cos(k pi / p)).

inline laakso::LaplacianMatrix path_laplacian(int p, const laakso::Rational& h) {
  laakso::LaplacianMatrix m;
  m.dim = p + 1;
  m.h = h;
  m.symmetrized = false;  // raw form; end rows carry the reflection weight
  m.degree.assign(static_cast<std::size_t>(p + 1), 2);
  m.degree.front() = 1;
  m.degree.back() = 1;
  const double s = m.h2_inv();
  m.row_ptr.push_back(0);
  for (int r = 0; r <= p; ++r) {
    if (r > 0) {
      m.col.push_back(r - 1);
      m.val.push_back(r == p ? -2.0 * s : -s);
    }
    m.col.push_back(r);
    m.val.push_back(2.0 * s);
    if (r < p) {
      m.col.push_back(r + 1);
      m.val.push_back(r == 0 ? -2.0 * s : -s);
    }
    m.row_ptr.push_back(static_cast<std::int64_t>(m.col.size()));
  }
  return m;
}

}  // namespace laakso_test
