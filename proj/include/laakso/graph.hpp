#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "laakso/errors.hpp"
#include "laakso/jsequence.hpp"
#include "laakso/rational.hpp"

namespace laakso {

/// A vertex of the approximating graph F_n. `column` is the horizontal grid
/// index c in [0, J_n] (position x = c * d_n). `sheet` is the canonical
/// representative of the binary sheet word under the wormhole identification.
/// `level` is the wormhole level of the column (0 at the two boundary
/// columns).
struct VertexKey {
  std::int64_t column;
  std::uint32_t sheet;
  int level;
};

struct GraphEdge {
  std::int32_t u;
  std::int32_t v;
};

constexpr std::int64_t kDefaultVertexCap = 5'000'000;

/// The quantum-graph approximation F_n of a Laakso space, as a multigraph
/// with uniform edge length d_n. Immutable after construction.
class LaaksoGraph {
 public:
  const JSequence& j_seq() const { return jseq_; }
  int level() const { return n_; }
  Rational edge_length() const { return jseq_.d(n_); }
  std::int64_t columns() const { return big_j_; }  // column index range [0, J_n]

  std::int64_t vertex_count() const {
    return static_cast<std::int64_t>(vertices_.size());
  }
  std::int64_t edge_count() const {
    return static_cast<std::int64_t>(edges_.size());
  }
  const std::vector<VertexKey>& vertices() const { return vertices_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<std::int32_t>& boundary_set() const { return boundary_; }

  int degree(std::int64_t v) const { return degree_[v]; }

  /// Vertex index for (column, sheet word). The word is any member of the
  /// identification class, not necessarily the canonical representative.
  std::int32_t vertex_index(std::int64_t column, std::uint32_t word) const {
    int lvl = column_level_[column];
    if (lvl == 0)
      return static_cast<std::int32_t>(column_base_[column] + word);
    // At a level-m wormhole column, words agreeing outside coordinate m are
    // identified; canonical representative has bit (m-1) clear.
    int b = lvl - 1;
    std::uint32_t low = word & ((1u << b) - 1u);
    std::uint32_t rank = ((word >> (b + 1)) << b) | low;
    return static_cast<std::int32_t>(column_base_[column] + rank);
  }

  int column_level(std::int64_t column) const { return column_level_[column]; }

  /// Aggregated adjacency: for vertex v, pairs (neighbor, edge multiplicity).
  struct Neighbor {
    std::int32_t vertex;
    std::int32_t multiplicity;
  };
  const std::vector<Neighbor>& neighbors(std::int64_t v) const {
    return adjacency_[v];
  }

  friend LaaksoGraph build_graph(const JSequence& jseq, int n,
                                 std::int64_t vertex_cap);

 private:
  JSequence jseq_{std::vector<int>{2}};
  int n_ = 0;
  std::int64_t big_j_ = 1;
  std::vector<VertexKey> vertices_;
  std::vector<GraphEdge> edges_;
  std::vector<std::int32_t> boundary_;
  std::vector<int> degree_;
  std::vector<std::int64_t> column_base_;
  std::vector<int> column_level_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Builds F_n with the deterministic labeling: columns left to right, within
/// a column sheet classes by increasing binary word (top sheet = word 0).
inline LaaksoGraph build_graph(const JSequence& jseq, int n,
                               std::int64_t vertex_cap = kDefaultVertexCap) {
  if (n < 0) throw InvalidJError("build_graph: n must be >= 0");
  LaaksoGraph g;
  g.jseq_ = jseq;
  g.n_ = n;
  const std::int64_t J = jseq.big_j(n);
  g.big_j_ = J;

  if (n > 30) throw TooLargeError("build_graph: 2^n sheets exceed 32 bits");
  const std::int64_t sheets = std::int64_t{1} << n;
  const std::int64_t interior_classes = n >= 1 ? sheets / 2 : 1;
  const std::int64_t nverts =
      n == 0 ? 2 : 2 * sheets + (J - 1) * interior_classes;
  if (nverts > vertex_cap)
    throw TooLargeError("build_graph: vertex count " + std::to_string(nverts) +
                        " exceeds cap " + std::to_string(vertex_cap));

  // Column levels. Interior column c has the unique level m with
  // c*d_n a multiple of d_m but not of d_{m-1}.
  g.column_level_.assign(static_cast<std::size_t>(J + 1), 0);
  for (std::int64_t c = 1; c < J; ++c) {
    std::int64_t cc = c;
    int m = n;
    while (m >= 1 && cc % jseq.j(m) == 0) {
      cc /= jseq.j(m);
      --m;
    }
    g.column_level_[c] = m;
  }

  // Vertices in canonical order.
  g.column_base_.assign(static_cast<std::size_t>(J + 1), 0);
  g.vertices_.reserve(static_cast<std::size_t>(nverts));
  for (std::int64_t c = 0; c <= J; ++c) {
    g.column_base_[c] = static_cast<std::int64_t>(g.vertices_.size());
    int lvl = g.column_level_[c];
    if (lvl == 0) {
      for (std::uint32_t w = 0; w < static_cast<std::uint32_t>(sheets); ++w)
        g.vertices_.push_back({c, w, 0});
    } else {
      int b = lvl - 1;
      for (std::int64_t r = 0; r < interior_classes; ++r) {
        // Expand rank back to the canonical word with bit b clear.
        std::uint32_t rr = static_cast<std::uint32_t>(r);
        std::uint32_t low = rr & ((1u << b) - 1u);
        std::uint32_t w = ((rr >> b) << (b + 1)) | low;
        g.vertices_.push_back({c, w, lvl});
      }
    }
  }

  // Edges: one per sheet word per column gap.
  g.edges_.reserve(static_cast<std::size_t>(sheets * J));
  g.degree_.assign(g.vertices_.size(), 0);
  for (std::int64_t c = 0; c < J; ++c) {
    for (std::uint32_t w = 0; w < static_cast<std::uint32_t>(sheets); ++w) {
      std::int32_t u = g.vertex_index(c, w);
      std::int32_t v = g.vertex_index(c + 1, w);
      g.edges_.push_back({u, v});
      ++g.degree_[u];
      ++g.degree_[v];
    }
  }

  for (std::size_t i = 0; i < g.vertices_.size(); ++i)
    if (g.vertices_[i].column == 0 || g.vertices_[i].column == J)
      g.boundary_.push_back(static_cast<std::int32_t>(i));

  // Aggregated adjacency (parallel edges folded into multiplicity).
  g.adjacency_.assign(g.vertices_.size(), {});
  for (const GraphEdge& e : g.edges_) {
    auto add = [&](std::int32_t a, std::int32_t b) {
      auto& lst = g.adjacency_[a];
      for (auto& nb : lst)
        if (nb.vertex == b) {
          ++nb.multiplicity;
          return;
        }
      lst.push_back({b, 1});
    };
    add(e.u, e.v);
    add(e.v, e.u);
  }
  return g;
}

/// Dense symmetric incidence matrix; entry (u,v) counts edges between u and v.
struct IncidenceMatrix {
  std::int64_t dim = 0;
  std::vector<int> entries;  // row-major dim*dim

  int at(std::int64_t u, std::int64_t v) const { return entries[u * dim + v]; }
};

inline IncidenceMatrix incidence_matrix(const LaaksoGraph& g,
                                        std::int64_t dense_cap = 8192) {
  const std::int64_t dim = g.vertex_count();
  if (dim > dense_cap)
    throw TooLargeError("incidence_matrix: dimension " + std::to_string(dim) +
                        " too large for dense output");
  IncidenceMatrix m;
  m.dim = dim;
  m.entries.assign(static_cast<std::size_t>(dim * dim), 0);
  for (const GraphEdge& e : g.edges()) {
    ++m.entries[static_cast<std::size_t>(e.u) * dim + e.v];
    ++m.entries[static_cast<std::size_t>(e.v) * dim + e.u];
  }
  return m;
}

/// Hausdorff dimension 1 + ln 2 / ln j of the constant-j Laakso space.
inline double hausdorff_dimension(int j) {
  if (j < 2) throw InvalidJError("hausdorff_dimension: j must be >= 2");
  return 1.0 + std::log(2.0) / std::log(static_cast<double>(j));
}

}  // namespace laakso
