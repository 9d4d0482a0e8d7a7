#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "laakso/compare.hpp"
#include "laakso/eigensolver.hpp"
#include "laakso/graph.hpp"
#include "laakso/laplacian.hpp"
#include "laakso/spectrum.hpp"

namespace laakso {

using nlohmann::json;

inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// --- graph ----------------------------------------------------------------

struct GraphData {
  std::vector<int> j;
  int n = 0;
  std::vector<VertexKey> vertices;
  std::vector<GraphEdge> edges;
  Rational length{1, 1};

  friend bool operator==(const GraphData& a, const GraphData& b) {
    if (a.j != b.j || a.n != b.n || a.vertices.size() != b.vertices.size() ||
        a.edges.size() != b.edges.size() || !(a.length == b.length))
      return false;
    for (std::size_t i = 0; i < a.vertices.size(); ++i) {
      const VertexKey &x = a.vertices[i], &y = b.vertices[i];
      if (x.column != y.column || x.sheet != y.sheet || x.level != y.level)
        return false;
    }
    for (std::size_t i = 0; i < a.edges.size(); ++i)
      if (a.edges[i].u != b.edges[i].u || a.edges[i].v != b.edges[i].v)
        return false;
    return true;
  }
};

inline GraphData graph_data(const LaaksoGraph& g) {
  GraphData d;
  d.j = g.j_seq().values();
  d.n = g.level();
  d.vertices = g.vertices();
  d.edges = g.edges();
  d.length = g.edge_length();
  return d;
}

inline json graph_to_json(const LaaksoGraph& g) {
  json out;
  out["j"] = g.j_seq().values();
  out["n"] = g.level();
  const double dn = g.edge_length().to_double();
  json verts = json::array();
  for (std::size_t i = 0; i < g.vertices().size(); ++i) {
    const VertexKey& v = g.vertices()[i];
    verts.push_back({{"id", i},
                     {"column", v.column},
                     {"x", static_cast<double>(v.column) * dn},
                     {"level", v.level},
                     {"sheet", v.sheet}});
  }
  out["vertices"] = std::move(verts);
  json edges = json::array();
  for (const GraphEdge& e : g.edges())
    edges.push_back({{"u", e.u}, {"v", e.v}, {"length", dn}});
  out["edges"] = std::move(edges);
  return out;
}

inline GraphData graph_from_json(const json& in) {
  GraphData d;
  d.j = in.at("j").get<std::vector<int>>();
  d.n = in.at("n").get<int>();
  JSequence js(d.j);
  d.length = js.d(d.n);
  for (const json& v : in.at("vertices"))
    d.vertices.push_back({v.at("column").get<std::int64_t>(),
                          v.at("sheet").get<std::uint32_t>(),
                          v.at("level").get<int>()});
  for (const json& e : in.at("edges"))
    d.edges.push_back({e.at("u").get<std::int32_t>(),
                       e.at("v").get<std::int32_t>()});
  return d;
}

// --- matrices -------------------------------------------------------------

inline std::string incidence_to_text(const IncidenceMatrix& m) {
  std::ostringstream os;
  for (std::int64_t r = 0; r < m.dim; ++r) {
    for (std::int64_t c = 0; c < m.dim; ++c) {
      if (c) os << ' ';
      os << m.at(r, c);
    }
    os << '\n';
  }
  return os.str();
}

/// Coordinate format: one "row col value" line per stored entry.
inline std::string matrix_to_coordinate(const LaplacianMatrix& m) {
  std::ostringstream os;
  os << m.dim << ' ' << m.dim << ' ' << m.val.size() << '\n';
  for (std::int64_t r = 0; r < m.dim; ++r)
    for (std::int64_t p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p)
      os << r << ' ' << m.col[p] << ' ' << fmt17(m.val[p]) << '\n';
  return os.str();
}

inline std::string matrix_to_dense_text(const LaplacianMatrix& m) {
  if (m.dim > 64)
    throw TooLargeError("matrix_to_dense_text: dim > 64, use coordinate form");
  std::ostringstream os;
  for (std::int64_t r = 0; r < m.dim; ++r) {
    for (std::int64_t c = 0; c < m.dim; ++c) {
      if (c) os << ' ';
      os << fmt17(m.at(r, c));
    }
    os << '\n';
  }
  return os.str();
}

// --- spectra --------------------------------------------------------------

inline json spectrum_to_json(const SpectrumTable& t) {
  json out;
  out["j"] = t.j.values();
  out["lambda_max"] = t.lambda_max;
  out["max_level"] = t.max_level;
  json entries = json::array();
  for (const SpectrumEntry& e : t.entries) {
    json sources = json::array();
    for (const SpectrumSource& s : e.sources)
      sources.push_back({{"level", s.level},
                         {"piece", piece_name(s.kind)},
                         {"k", s.k},
                         {"count", s.count}});
    entries.push_back({{"num", e.r.num()},
                       {"den", e.r.den()},
                       {"lambda", e.lambda()},
                       {"multiplicity", e.multiplicity},
                       {"sources", std::move(sources)}});
  }
  out["entries"] = std::move(entries);
  return out;
}

inline std::string spectrum_to_csv(const SpectrumTable& t) {
  std::ostringstream os;
  os << "lambda,multiplicity,num,den\n";
  for (const SpectrumEntry& e : t.entries)
    os << fmt17(e.lambda()) << ',' << e.multiplicity << ',' << e.r.num() << ','
       << e.r.den() << '\n';
  return os.str();
}

inline std::string eigs_to_csv(const EigenResult& r) {
  std::ostringstream os;
  os << "index,lambda,residual\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
    os << i << ',' << fmt17(r.eigenvalues[i]) << ',' << fmt17(r.residuals[i])
       << '\n';
  return os.str();
}

// --- comparison report ----------------------------------------------------

inline json report_to_json(const ComparisonReport& rep) {
  json out;
  out["h"] = rep.h;
  out["trust_cutoff"] = rep.trust_cutoff;
  json pairs = json::array();
  for (const MatchedPair& p : rep.pairs) {
    pairs.push_back({{"num", p.analytic.r.num()},
                     {"den", p.analytic.r.den()},
                     {"lambda", p.analytic.lambda()},
                     {"analytic_multiplicity", p.analytic.multiplicity},
                     {"cluster_size", p.numeric_values.size()},
                     {"cluster", p.numeric_values},
                     {"predicted", p.predicted},
                     {"rel_error_mean", p.rel_error_mean},
                     {"dispersion_residual", p.dispersion_residual}});
  }
  out["pairs"] = std::move(pairs);
  out["unmatched_numeric"] = rep.unmatched_numeric;
  json ua = json::array();
  for (const SpectrumEntry& e : rep.unmatched_analytic)
    ua.push_back({{"num", e.r.num()},
                  {"den", e.r.den()},
                  {"lambda", e.lambda()},
                  {"multiplicity", e.multiplicity}});
  out["unmatched_analytic"] = std::move(ua);
  out["notes"] = rep.notes;
  return out;
}

/// Human-readable table in the style of the published eigenvalue listing:
/// two decimals, analytic multiplicity next to the numeric cluster size.
inline std::string report_to_table(const ComparisonReport& rep) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%12s %6s %12s %8s %10s\n", "lambda", "m",
                "numeric", "cluster", "rel.err");
  os << line;
  for (const MatchedPair& p : rep.pairs) {
    double mean = 0;
    for (double v : p.numeric_values) mean += v;
    mean /= static_cast<double>(p.numeric_values.size());
    std::snprintf(line, sizeof line, "%12.2f %6lld %12.2f %8zu %10.2e\n",
                  p.analytic.lambda(),
                  static_cast<long long>(p.analytic.multiplicity), mean,
                  p.numeric_values.size(), p.rel_error_mean);
    os << line;
  }
  for (const std::string& note : rep.notes) os << "note: " << note << '\n';
  return os.str();
}

}  // namespace laakso
