#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "laakso/errors.hpp"
#include "laakso/graph.hpp"
#include "laakso/jsequence.hpp"
#include "laakso/rational.hpp"

namespace laakso {

inline constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

enum class PieceKind { NN, ND, DD, CrossLong, CrossShort };

inline const char* piece_name(PieceKind k) {
  switch (k) {
    case PieceKind::NN: return "NN";
    case PieceKind::ND: return "ND";
    case PieceKind::DD: return "DD";
    case PieceKind::CrossLong: return "X2d";
    case PieceKind::CrossShort: return "X1d";
  }
  return "?";
}

struct SpectrumSource {
  int level;
  PieceKind kind;
  std::int64_t k;       // mode index within the piece family
  std::int64_t count;   // multiplicity contribution (piece count x per-piece)
};

/// One exact eigenvalue: lambda = r * pi^2 with rational r, plus its total
/// multiplicity and the per-piece provenance that produced it.
struct SpectrumEntry {
  Rational r;  // lambda / pi^2
  std::int64_t multiplicity = 0;
  std::vector<SpectrumSource> sources;

  double lambda() const { return r.to_double() * kPi2; }
};

struct SpectrumTable {
  JSequence j{std::vector<int>{2}};
  double lambda_max = 0;
  int max_level = 0;
  std::vector<SpectrumEntry> entries;  // ascending in r
};

/// Piece tallies for the level-n orthogonal subspace: cutting F_{n-1} at the
/// level-n wormhole columns leaves Neumann-Dirichlet end intervals,
/// Dirichlet-Dirichlet interior intervals, and 4-arm crosses, all with arm
/// length d_n.
struct PieceCounts {
  int level = 0;
  std::int64_t num_nd = 0;
  std::int64_t num_dd = 0;
  std::int64_t num_x = 0;
};

enum class IntervalKind { NN, ND, DD };

/// Classical spectrum of -d^2/dx^2 on an interval of length d, as exact
/// rational multiples of pi^2, truncated at lambda_max. NN: (k/d)^2, k >= 0;
/// ND: ((2k+1)/(2d))^2, k >= 0; DD: (k/d)^2, k >= 1. Multiplicity 1 each.
inline std::vector<SpectrumEntry> interval_spectrum(IntervalKind kind,
                                                    const Rational& d,
                                                    double lambda_max,
                                                    int level = 0) {
  if (!(d > Rational(0))) throw Error("interval_spectrum: d must be positive");
  if (lambda_max <= 0) throw Error("interval_spectrum: lambda_max must be > 0");
  std::vector<SpectrumEntry> out;
  const double rmax = lambda_max / kPi2;
  const Rational inv_d2 = Rational(d.den(), d.num()) * Rational(d.den(), d.num());
  PieceKind pk = kind == IntervalKind::NN   ? PieceKind::NN
                 : kind == IntervalKind::ND ? PieceKind::ND
                                            : PieceKind::DD;
  for (std::int64_t k = 0;; ++k) {
    Rational r(0);
    if (kind == IntervalKind::ND) {
      const std::int64_t q = 2 * k + 1;
      r = Rational(q * q, 4) * inv_d2;
    } else {
      if (kind == IntervalKind::DD && k == 0) continue;
      r = Rational(k * k) * inv_d2;
    }
    if (r.to_double() > rmax * (1 + 1e-12)) break;
    SpectrumEntry e;
    e.r = r;
    e.multiplicity = 1;
    e.sources.push_back({level, pk, k, 1});
    out.push_back(std::move(e));
  }
  return out;
}

/// Spectrum of the 4-arm cross with arm length d and Dirichlet outer ends,
/// through the decomposition into one Dirichlet interval of length 2d
/// (symmetric modes) plus two of length d (antisymmetric modes).
inline std::vector<SpectrumEntry> cross_spectrum(const Rational& d,
                                                 double lambda_max,
                                                 int level = 0) {
  std::vector<SpectrumEntry> out;
  Rational two_d = d * Rational(2);
  for (SpectrumEntry e : interval_spectrum(IntervalKind::DD, two_d, lambda_max, level)) {
    e.sources[0].kind = PieceKind::CrossLong;
    out.push_back(std::move(e));
  }
  for (SpectrumEntry e : interval_spectrum(IntervalKind::DD, d, lambda_max, level)) {
    e.sources[0].kind = PieceKind::CrossShort;
    e.sources[0].count = 2;
    e.multiplicity = 2;
    out.push_back(std::move(e));
  }
  // Merge equal rational values.
  std::map<Rational, SpectrumEntry> merged;
  for (auto& e : out) {
    auto it = merged.find(e.r);
    if (it == merged.end()) {
      merged.emplace(e.r, std::move(e));
    } else {
      it->second.multiplicity += e.multiplicity;
      it->second.sources.insert(it->second.sources.end(), e.sources.begin(),
                                e.sources.end());
    }
  }
  std::vector<SpectrumEntry> res;
  res.reserve(merged.size());
  for (auto& [r, e] : merged) res.push_back(std::move(e));
  return res;
}

/// Closed-form piece counts for level n >= 1:
///   num_ND = 2^n (one per boundary vertex of F_{n-1})
///   num_X  = 2^{n-2} (J_{n-1} - 1) for n >= 2 (interior vertices of F_{n-1})
///   num_DD = 2^{n-1} J_{n-1} (j_n - 2) (interior strips of each edge)
inline PieceCounts piece_counts(const JSequence& jseq, int n) {
  if (n < 1) throw Error("piece_counts: n must be >= 1");
  PieceCounts pc;
  pc.level = n;
  const std::int64_t jm1 = jseq.big_j(n - 1);
  pc.num_nd = std::int64_t{1} << n;
  pc.num_x = n >= 2 ? (std::int64_t{1} << (n - 2)) * (jm1 - 1) : 0;
  pc.num_dd = (std::int64_t{1} << (n - 1)) * jm1 * (jseq.j(n) - 2);
  return pc;
}

/// Brute-force decomposition oracle. Builds F_{n-1}, subdivides each edge at
/// the j_n - 1 level-n cut points, removes the cut points, and classifies the
/// connected components of what remains by shape.
inline PieceCounts decompose_bruteforce(const JSequence& jseq, int n,
                                        std::int64_t vertex_cap = kDefaultVertexCap) {
  if (n < 1) throw Error("decompose_bruteforce: n must be >= 1");
  const LaaksoGraph g = build_graph(jseq, n - 1, vertex_cap);
  const int jn = jseq.j(n);
  const std::int64_t nv = g.vertex_count();

  PieceCounts pc;
  pc.level = n;

  // Subdivided node set: the vertices of F_{n-1} followed by jn-1 cut nodes
  // per edge (the level-n wormhole columns; none of the interior offsets
  // 1..jn-1 is divisible by j_n, so every subdivision point is a cut).
  const std::int64_t ne = g.edge_count();
  const std::int64_t total = nv + ne * (jn - 1);
  std::vector<std::vector<std::int64_t>> adj(static_cast<std::size_t>(total));
  auto is_cut = [&](std::int64_t node) { return node >= nv; };
  for (std::int64_t ei = 0; ei < ne; ++ei) {
    const GraphEdge& e = g.edges()[static_cast<std::size_t>(ei)];
    std::int64_t prev = e.u;
    for (int i = 1; i < jn; ++i) {
      std::int64_t cut = nv + ei * (jn - 1) + (i - 1);
      adj[prev].push_back(cut);
      adj[cut].push_back(prev);
      prev = cut;
    }
    adj[prev].push_back(e.v);
    adj[e.v].push_back(prev);
  }

  // Bare strips: chain segments with a cut node at both ends.
  for (std::int64_t node = nv; node < total; ++node)
    for (std::int64_t nb : adj[node])
      if (is_cut(nb)) ++pc.num_dd;
  if (pc.num_dd % 2 != 0)
    throw UnclassifiablePieceError("decompose_bruteforce: odd strip count");
  pc.num_dd /= 2;

  // Connected components of the complement of the cut set.
  std::vector<char> visited(static_cast<std::size_t>(total), 0);
  std::vector<std::int64_t> stack;
  for (std::int64_t start = 0; start < nv; ++start) {
    if (visited[start]) continue;
    std::int64_t members = 0, stubs = 0, free_ends = 0;
    stack.push_back(start);
    visited[start] = 1;
    while (!stack.empty()) {
      std::int64_t node = stack.back();
      stack.pop_back();
      ++members;
      if (g.degree(node) == 1) ++free_ends;
      for (std::int64_t nb : adj[node]) {
        if (is_cut(nb)) {
          ++stubs;
        } else if (!visited[nb]) {
          visited[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
    if (members == 1 && stubs == 1 && free_ends == 1) {
      ++pc.num_nd;  // boundary vertex: one free Neumann end, one cut arm
    } else if (members == 1 && stubs == 4 && free_ends == 0) {
      ++pc.num_x;  // degree-4 center with four Dirichlet arms
    } else {
      throw UnclassifiablePieceError(
          "decompose_bruteforce: component with " + std::to_string(members) +
          " vertices, " + std::to_string(stubs) + " cut arms, " +
          std::to_string(free_ends) + " free ends");
    }
  }
  return pc;
}

/// Exact rational length conservation of a level-n decomposition:
/// (num_ND + num_DD + 4 num_X) * d_n must equal 2^{n-1}, the total edge
/// length of F_{n-1}.
inline bool length_conserved(const JSequence& jseq, const PieceCounts& pc) {
  Rational total = Rational(pc.num_nd + pc.num_dd + 4 * pc.num_x) *
                   jseq.d(pc.level);
  return total == Rational(std::int64_t{1} << (pc.level - 1));
}

/// Smallest max_level whose successor contributes nothing below lambda_max:
/// the lowest level-(m+1) value is pi^2 J_{m+1}^2 / 4 (ND ground mode).
inline int required_max_level(const JSequence& jseq, double lambda_max) {
  for (int m = 0;; ++m) {
    const double jnext = static_cast<double>(jseq.big_j(m + 1));
    if (kPi2 * jnext * jnext / 4.0 > lambda_max) return m;
    if (m > 62) throw TooLargeError("required_max_level: no finite cover");
  }
}

/// The exact spectrum with multiplicities, assembled from the piece
/// decomposition of every level up to max_level and merged over equal
/// rational values (multiplicities add).
inline SpectrumTable theorem_spectrum(const JSequence& jseq, int max_level,
                                      double lambda_max) {
  if (lambda_max <= 0) throw Error("theorem_spectrum: lambda_max must be > 0");
  const int needed = required_max_level(jseq, lambda_max);
  if (max_level < 0) max_level = needed;
  if (max_level < needed)
    throw InsufficientDepthError(
        "theorem_spectrum: max_level " + std::to_string(max_level) +
        " does not cover lambda_max; need " + std::to_string(needed));

  std::map<Rational, SpectrumEntry> merged;
  auto add = [&](const std::vector<SpectrumEntry>& part, std::int64_t count) {
    if (count == 0) return;
    for (const SpectrumEntry& e : part) {
      auto [it, fresh] = merged.try_emplace(e.r);
      if (fresh) it->second.r = e.r;
      it->second.multiplicity += e.multiplicity * count;
      for (SpectrumSource s : e.sources) {
        s.count *= count;
        it->second.sources.push_back(s);
      }
    }
  };

  add(interval_spectrum(IntervalKind::NN, Rational(1), lambda_max, 0), 1);
  for (int n = 1; n <= max_level; ++n) {
    const PieceCounts pc = piece_counts(jseq, n);
    const Rational dn = jseq.d(n);
    add(interval_spectrum(IntervalKind::ND, dn, lambda_max, n), pc.num_nd);
    add(interval_spectrum(IntervalKind::DD, dn, lambda_max, n), pc.num_dd);
    add(cross_spectrum(dn, lambda_max, n), pc.num_x);
  }

  SpectrumTable t;
  t.j = jseq;
  t.lambda_max = lambda_max;
  t.max_level = max_level;
  t.entries.reserve(merged.size());
  for (auto& [r, e] : merged) t.entries.push_back(std::move(e));
  return t;
}

inline SpectrumTable theorem_spectrum(const JSequence& jseq,
                                      double lambda_max) {
  return theorem_spectrum(jseq, -1, lambda_max);
}

}  // namespace laakso
