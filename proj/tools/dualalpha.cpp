#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dualalpha/alpha_builder.hpp"
#include "dualalpha/cech_graph.hpp"
#include "dualalpha/complex.hpp"
#include "dualalpha/io.hpp"
#include "dualalpha/oracle.hpp"

namespace {

using namespace dualalpha;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void add_input_options(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--points", cfg.points_path, "CSV point file")->required();
  cmd.add_option("--weights", cfg.weights_path, "one power per line");
  auto* alpha = cmd.add_option("--alpha", cfg.alpha, "cutoff a1 in power units");
  auto* radius = cmd.add_option("--radius", cfg.radius, "unweighted radius r, a1 = r^2");
  alpha->excludes(radius);
  radius->excludes(alpha);
}

void add_build_options(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
  cmd.add_option("--bound-tol", cfg.tol.bound_rel, "relative slack on c* <= c1")
      ->capture_default_str();
  cmd.add_option("--feasibility-tol", cfg.tol.feasibility_rel, "relative sign tolerance")
      ->capture_default_str();
  cmd.add_option("--pivot-tol", cfg.tol.pivot_rel, "relative Cholesky pivot threshold")
      ->capture_default_str();
}

// Writes to the file if given, standard output otherwise.
template <class F>
void with_output(const std::optional<std::filesystem::path>& path, F&& body) {
  if (!path) {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path->string());
  body(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path->string());
}

WeightedPoints load(const RunConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg.load_points();
}

int run_build(const RunConfig& cfg, bool with_witness) {
  const WeightedPoints points = load(cfg);
  AlphaComplex result = build_alpha(points, cfg.build_params());
  ComplexFile file{points.ambient_dim(), points.a1, std::move(result.complex), std::nullopt};
  if (with_witness) file.witness = std::move(result.witness);
  with_output(cfg.out_path, [&](std::ostream& out) { write_complex(file, out); });
  return kExitOk;
}

int run_betti(RunConfig cfg, int upto) {
  if (upto < 0) throw UsageError("--upto must be nonnegative");
  cfg.max_dim = upto + 1;
  const WeightedPoints points = load(cfg);
  const BettiVector b = betti_pipeline(points, cfg.build_params(), cfg.prime);
  with_output(cfg.out_path, [&](std::ostream& out) {
    for (std::size_t value : b) out << value << '\n';
  });
  return kExitOk;
}

int run_graph(const RunConfig& cfg) {
  const WeightedPoints points = load(cfg);
  const CechGraph graph = build_cech_graph(points);
  with_output(cfg.out_path, [&](std::ostream& out) { write_edge_list(graph, out); });
  return kExitOk;
}

int run_verify(const RunConfig& cfg) {
  const WeightedPoints points = load(cfg);
  if (points.size() > kMaxOraclePoints) {
    throw UsageError("verify supports at most " + std::to_string(kMaxOraclePoints) +
                     " points, got " + std::to_string(points.size()));
  }
  const BuildParams params = cfg.build_params();
  const AlphaComplex fast = build_alpha(points, params);
  const AlphaComplex reference = brute_alpha(points, cfg.max_dim, {params.tol, params.threads});
  const ComparisonReport report = compare(fast, reference);
  with_output(cfg.out_path, [&](std::ostream& out) { out << report.summary() << '\n'; });
  return report.identical() ? kExitOk : kExitMismatch;
}

int run_export(const std::filesystem::path& complex_path, const std::filesystem::path& out_path) {
  const ComplexFile file = read_complex(complex_path);
  if (!file.witness) {
    throw UsageError(complex_path.string() + " has no witnesses; rebuild with --witness");
  }
  if (file.ambient_dim > 3) {
    throw UsageError("OFF export needs ambient dimension <= 3, got " +
                     std::to_string(file.ambient_dim));
  }
  const int top = std::min(2, file.complex.dimension());
  const BarycentricEmbedding embedding = barycentric_embed(file.complex, *file.witness, top);
  with_output(out_path, [&](std::ostream& out) { write_off(embedding, out); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted alpha complexes by dual quadratic programming"};
  app.require_subcommand(1, 1);

  RunConfig cfg;
  bool with_witness = false;
  int upto = 1;
  std::filesystem::path complex_path;
  std::filesystem::path off_path;

  auto* build = app.add_subcommand("build", "compute the alpha complex");
  add_input_options(*build, cfg);
  add_build_options(*build, cfg);
  build->add_option("--dim", cfg.max_dim, "maximum simplex dimension")->required();
  build->add_option("--out", cfg.out_path, "output .alpha file (default stdout)");
  build->add_flag("--witness", with_witness, "append witness coordinates");

  auto* betti_cmd = app.add_subcommand("betti", "Betti numbers of the alpha complex");
  add_input_options(*betti_cmd, cfg);
  add_build_options(*betti_cmd, cfg);
  betti_cmd->add_option("--prime", cfg.prime, "field characteristic")->capture_default_str();
  betti_cmd->add_option("--upto", upto, "highest Betti number")->capture_default_str();
  betti_cmd->add_option("--out", cfg.out_path, "output file (default stdout)");

  auto* graph = app.add_subcommand("graph", "Cech graph edge list");
  add_input_options(*graph, cfg);
  graph->add_option("--out", cfg.out_path, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "compare against the brute-force oracle");
  add_input_options(*verify, cfg);
  add_build_options(*verify, cfg);
  verify->add_option("--dim", cfg.max_dim, "maximum simplex dimension")->capture_default_str();
  verify->add_option("--out", cfg.out_path, "report file (default stdout)");

  auto* export_geom = app.add_subcommand("export-geom", "barycentric subdivision as OFF");
  export_geom->add_option("--complex", complex_path, ".alpha file with witnesses")->required();
  export_geom->add_option("--out", off_path, "output .off file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) return run_build(cfg, with_witness);
    if (*betti_cmd) return run_betti(cfg, upto);
    if (*graph) return run_graph(cfg);
    if (*verify) return run_verify(cfg);
    if (*export_geom) return run_export(complex_path, off_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}
