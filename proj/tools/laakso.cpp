// Command-line front end: graph construction, Laplacian export, eigensolves,
// exact spectra, numeric/analytic comparison, and SVG plots.

#include <CLI11.hpp>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "laakso/laakso.hpp"

namespace {

using namespace laakso;

std::int64_t vertex_cap_from_env() {
  if (const char* env = std::getenv("LAAKSO_MAX_VERTICES")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultVertexCap;
}

// Declared outputs are written atomically: temp file in the same directory,
// then rename.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw Error("cannot open " + tmp.string() + " for writing");
    os << content;
  }
  fs::rename(tmp, target);
}

struct CommonArgs {
  std::vector<int> j{2};
  int n = 1;
  std::string out;
};

EigenResult solve_for(const JSequence& js, int n, std::int64_t k, bool dense,
                      std::int64_t dense_threshold, double tol, int threads,
                      std::int64_t cap) {
  LaaksoGraph g = build_graph(js, n, cap);
  LaplacianMatrix m = symmetrize(assemble_laplacian(g));
  if (dense || (m.dim <= dense_threshold && k >= m.dim - 1)) {
    EigenResult r = solve_dense(m, std::max(m.dim, dense_threshold));
    if (k < static_cast<std::int64_t>(r.eigenvalues.size())) {
      r.eigenvalues.resize(static_cast<std::size_t>(k));
      r.residuals.resize(static_cast<std::size_t>(k));
      r.eigenvectors = r.eigenvectors.leftCols(k).eval();
    }
    return r;
  }
  LanczosOptions opts;
  opts.rel_tol = tol;
  opts.threads = threads;
  if (k >= 100) opts.block = 16;
  return solve_lanczos(m, std::min<std::int64_t>(k, m.dim - 1), opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laakso-space quantum graph spectra"};
  app.set_config("--config", "", "key=value config file");
  app.require_subcommand(1);

  const std::int64_t cap = vertex_cap_from_env();

  // Shared solver knobs.
  std::int64_t dense_threshold = 2000;
  double tol = 1e-9;
  int threads = 1;
  app.add_option("--dense-threshold", dense_threshold,
                 "max dimension for the dense reference path");
  app.add_option("--tol", tol, "residual tolerance relative to 4/h^2");
  app.add_option("--threads", threads, "matvec worker threads");

  // graph
  auto* cmd_graph = app.add_subcommand("graph", "build an approximating graph");
  CommonArgs ga;
  std::string emit = "json";
  cmd_graph->add_option("--j", ga.j, "branching sequence (one value = constant)")
      ->required();
  cmd_graph->add_option("--n", ga.n, "approximation level")->required();
  cmd_graph->add_option("--emit", emit, "incidence|json")
      ->check(CLI::IsMember({"incidence", "json"}));
  cmd_graph->add_option("--out", ga.out, "output path (default stdout)");

  // laplacian
  auto* cmd_lap = app.add_subcommand("laplacian", "export the Laplacian matrix");
  CommonArgs la;
  bool lap_sym = false;
  std::string lap_format = "coo";
  cmd_lap->add_option("--j", la.j)->required();
  cmd_lap->add_option("--n", la.n)->required();
  cmd_lap->add_flag("--symmetrized", lap_sym, "similar symmetric form");
  cmd_lap->add_option("--format", lap_format, "coo|dense (dense: dim <= 64)")
      ->check(CLI::IsMember({"coo", "dense"}));
  cmd_lap->add_option("--out", la.out, "output path");

  // solve
  auto* cmd_solve = app.add_subcommand("solve", "lowest eigenpairs");
  CommonArgs sa;
  std::int64_t num_eigs = 10;
  bool force_dense = false;
  cmd_solve->add_option("--j", sa.j)->required();
  cmd_solve->add_option("--n", sa.n)->required();
  cmd_solve->add_option("--num-eigs", num_eigs, "number of eigenpairs");
  cmd_solve->add_flag("--dense", force_dense, "force the dense path");
  cmd_solve->add_option("--out", sa.out, "CSV output path");

  // spectrum
  auto* cmd_spec = app.add_subcommand("spectrum", "exact analytic spectrum");
  std::vector<int> spec_j{2};
  double lambda_max = 100;
  int max_level = -1;
  std::string spec_format = "json", spec_out;
  cmd_spec->add_option("--j", spec_j)->required();
  cmd_spec->add_option("--lambda-max", lambda_max)->required();
  cmd_spec->add_option("--max-level", max_level, "decomposition depth (default auto)");
  cmd_spec->add_option("--format", spec_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_spec->add_option("--out", spec_out, "output path");

  // compare
  auto* cmd_cmp = app.add_subcommand("compare", "numeric vs analytic report");
  CommonArgs ca;
  std::int64_t cmp_eigs = 40;
  double cmp_lambda_max = 0;
  cmd_cmp->add_option("--j", ca.j)->required();
  cmd_cmp->add_option("--n", ca.n)->required();
  cmd_cmp->add_option("--num-eigs", cmp_eigs);
  cmd_cmp->add_option("--lambda-max", cmp_lambda_max,
                      "analytic table depth (default: trust cutoff)");
  cmd_cmp->add_option("--out", ca.out, "report JSON path");

  // plot
  auto* cmd_plot = app.add_subcommand("plot", "SVG plots");
  CommonArgs pa;
  std::string kind = "eigenfunction";
  std::int64_t eig_index = 1, plot_eigs = 100;
  int plot_w = 900, plot_h = 600;
  cmd_plot->add_option("--kind", kind, "eigenfunction|histogram")
      ->check(CLI::IsMember({"eigenfunction", "histogram"}));
  cmd_plot->add_option("--j", pa.j)->required();
  cmd_plot->add_option("--n", pa.n)->required();
  cmd_plot->add_option("--eig-index", eig_index, "eigenpair index (0-based)");
  cmd_plot->add_option("--num-eigs", plot_eigs, "eigenvalues for histogram");
  cmd_plot->add_option("--width", plot_w);
  cmd_plot->add_option("--height", plot_h);
  cmd_plot->add_option("--out", pa.out, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cmd_graph->parsed()) {
      JSequence js(ga.j);
      LaaksoGraph g = build_graph(js, ga.n, cap);
      if (emit == "incidence")
        write_output(ga.out, incidence_to_text(incidence_matrix(g)));
      else
        write_output(ga.out, graph_to_json(g).dump(2) + "\n");
    } else if (cmd_lap->parsed()) {
      JSequence js(la.j);
      LaplacianMatrix m = assemble_laplacian(build_graph(js, la.n, cap));
      if (lap_sym) m = symmetrize(m);
      write_output(la.out, lap_format == "dense" ? matrix_to_dense_text(m)
                                                 : matrix_to_coordinate(m));
    } else if (cmd_solve->parsed()) {
      JSequence js(sa.j);
      EigenResult r = solve_for(js, sa.n, num_eigs, force_dense,
                                dense_threshold, tol, threads, cap);
      write_output(sa.out, eigs_to_csv(r));
    } else if (cmd_spec->parsed()) {
      JSequence js(spec_j);
      SpectrumTable t = theorem_spectrum(js, max_level, lambda_max);
      write_output(spec_out, spec_format == "csv"
                                 ? spectrum_to_csv(t)
                                 : spectrum_to_json(t).dump(2) + "\n");
    } else if (cmd_cmp->parsed()) {
      JSequence js(ca.j);
      EigenResult r = solve_for(js, ca.n, cmp_eigs, false, dense_threshold,
                                tol, threads, cap);
      const double h = js.d(ca.n).to_double();
      double lm = cmp_lambda_max > 0 ? cmp_lambda_max : 0.6 / (h * h);
      SpectrumTable t = theorem_spectrum(js, -1, lm);
      ComparisonReport rep = match_spectra(r, t, h);
      write_output(ca.out, report_to_json(rep).dump(2) + "\n");
      std::cerr << report_to_table(rep);
    } else if (cmd_plot->parsed()) {
      JSequence js(pa.j);
      LaaksoGraph g = build_graph(js, pa.n, cap);
      if (kind == "histogram") {
        EigenResult r = solve_for(js, pa.n, plot_eigs, false, dense_threshold,
                                  tol, threads, cap);
        write_output(pa.out, plot_histogram_svg(multiplicity_histogram(r),
                                                {plot_w, plot_h}));
      } else {
        EigenResult r = solve_for(js, pa.n, eig_index + 1, false,
                                  dense_threshold, tol, threads, cap);
        if (eig_index >= static_cast<std::int64_t>(r.eigenvalues.size()))
          throw Error("eig-index out of range");
        LaplacianMatrix m = assemble_laplacian(g);
        Eigen::MatrixXd raw = to_raw_basis(r.eigenvectors, m.degree);
        std::vector<double> vec(raw.col(eig_index).data(),
                                raw.col(eig_index).data() + raw.rows());
        write_output(pa.out,
                     plot_eigenfunction_svg(
                         g, vec, r.eigenvalues[static_cast<std::size_t>(eig_index)],
                         {plot_w, plot_h}));
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
