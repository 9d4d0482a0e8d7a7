#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>

#include "laakso/compare.hpp"
#include "laakso/errors.hpp"
#include "laakso/graph.hpp"

namespace laakso {

struct PlotOptions {
  int width = 900;
  int height = 600;
  double marker_radius = 3.0;
};

namespace detail {

inline std::string svg_header(int w, int h, const std::string& title) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
     << "<title>" << title << "</title>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

}  // namespace detail

/// Renders an eigenfunction on the graph: sheets laid out as vertically
/// offset horizontal tracks, vertices offset and colored by the function
/// value (raw basis). Wormhole vertices sit at the mean track height of
/// their identified sheets.
inline std::string plot_eigenfunction_svg(const LaaksoGraph& g,
                                          const std::vector<double>& vec,
                                          double lambda,
                                          const PlotOptions& opts = {}) {
  if (static_cast<std::int64_t>(vec.size()) != g.vertex_count())
    throw DimensionMismatchError("plot_eigenfunction: vector/vertex mismatch");
  const int n = g.level();
  const int tracks = 1 << n;
  const double margin = 40.0;
  const double w = opts.width, h = opts.height;
  const double xspan = w - 2 * margin;
  const double yspan = h - 2 * margin;
  const double track_gap = tracks > 1 ? yspan / (tracks - 1) : 0.0;
  double vmax = 1e-300;
  for (double v : vec) vmax = std::max(vmax, std::abs(v));
  const double amp = 0.45 * std::max(track_gap, 20.0) / vmax;

  // A vertex identified from sheets differing in coordinate m is drawn at
  // the mean height of the two member sheets.
  auto track_of = [&](const VertexKey& v) {
    if (v.level == 0) return static_cast<double>(v.sheet);
    const std::uint32_t other = v.sheet | (1u << (v.level - 1));
    return 0.5 * (static_cast<double>(v.sheet) + static_cast<double>(other));
  };
  const double dn = g.edge_length().to_double();
  auto pos = [&](std::int64_t vi) {
    const VertexKey& v = g.vertices()[static_cast<std::size_t>(vi)];
    const double x = margin + static_cast<double>(v.column) * dn * xspan;
    const double y = margin + track_of(v) * track_gap -
                     vec[static_cast<std::size_t>(vi)] * amp;
    return std::pair<double, double>{x, y};
  };

  char buf[256];
  std::snprintf(buf, sizeof buf, "lambda = %.4f", lambda);
  std::ostringstream os;
  os << detail::svg_header(opts.width, opts.height, buf);
  os << "<text x=\"" << margin << "\" y=\"20\" font-size=\"14\">" << buf
     << "</text>\n";
  for (const GraphEdge& e : g.edges()) {
    auto [x1, y1] = pos(e.u);
    auto [x2, y2] = pos(e.v);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                  "stroke=\"#888\" stroke-width=\"1\"/>\n",
                  x1, y1, x2, y2);
    os << buf;
  }
  for (std::int64_t vi = 0; vi < g.vertex_count(); ++vi) {
    auto [x, y] = pos(vi);
    const double val = vec[static_cast<std::size_t>(vi)];
    const char* color = val > 1e-12 ? "#c33" : (val < -1e-12 ? "#33c" : "#333");
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.1f\" fill=\"%s\"/>\n",
                  x, y, opts.marker_radius, color);
    os << buf;
  }
  os << "</svg>\n";
  return os.str();
}

/// Bar chart of multiplicity-cluster sizes, bars labeled by multiplicity.
inline std::string plot_histogram_svg(const Histogram& hist,
                                      const PlotOptions& opts = {}) {
  if (hist.size_counts.empty())
    throw EmptyInputError("plot_histogram: empty histogram");
  const double margin = 40.0;
  const double w = opts.width, h = opts.height;
  std::int64_t maxc = 0;
  for (const auto& [size, count] : hist.size_counts)
    maxc = std::max(maxc, count);
  const double nbars = static_cast<double>(hist.size_counts.size());
  const double bar_w = (w - 2 * margin) / nbars;
  const double yscale = (h - 2 * margin) / static_cast<double>(maxc);

  std::ostringstream os;
  os << detail::svg_header(opts.width, opts.height, "eigenvalue multiplicities");
  char buf[256];
  int i = 0;
  for (const auto& [size, count] : hist.size_counts) {
    const double bh = count * yscale;
    const double x = margin + i * bar_w;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                  "fill=\"#4a7\" stroke=\"#333\"/>\n",
                  x + 2, h - margin - bh, bar_w - 4, bh);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" "
                  "text-anchor=\"middle\">%lld</text>\n",
                  x + bar_w / 2, h - margin + 16,
                  static_cast<long long>(size));
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" "
                  "text-anchor=\"middle\">%lld</text>\n",
                  x + bar_w / 2, h - margin - bh - 4,
                  static_cast<long long>(count));
    os << buf;
    ++i;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace laakso
