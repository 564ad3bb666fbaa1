#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "graphon/calculus.hpp"
#include "graphon/classpoly.hpp"
#include "graphon/harness.hpp"
#include "graphon/homdensity.hpp"
#include "graphon/multigraph.hpp"
#include "graphon/norms.hpp"
#include "graphon/weighted_graph.hpp"

namespace {

using namespace graphon;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  return in;
}

template <typename Parser>
auto parse_file(const std::string& path, Parser parser) {
  auto in = open_input(path);
  try {
    return parser(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

Multigraph load_graph(const std::string& path) {
  return parse_file(path, [](std::istream& in) { return parse_multigraph(in); });
}

WeightedMatrix load_matrix(const std::string& path) {
  return parse_file(path, [](std::istream& in) { return parse_matrix(in); });
}

EdgePolynomial load_polynomial(const std::string& path) {
  return parse_file(path, [](std::istream& in) { return parse_polynomial(in); });
}

DensityCoefficients load_coefficients(const std::string& path) {
  return parse_file(path,
                    [](std::istream& in) { return parse_density_coefficients(in); });
}

struct Output {
  std::string machine;  // goes to stdout or --out, byte-stable
  std::string summary;  // goes to stderr
};

Output run_enumerate(int edges, std::optional<int> max_vertices) {
  auto graphs = enumerate_multigraphs(edges, max_vertices);
  std::ostringstream out;
  for (const auto& h : graphs) {
    out << "# id=" << h.canonical_hex() << "\n";
    out << to_text(h) << "\n";
  }
  std::ostringstream sum;
  sum << graphs.size() << " multigraph(s) with " << edges << " edge(s)";
  if (max_vertices) sum << " and at most " << *max_vertices << " vertices";
  return {out.str(), sum.str()};
}

Output run_density(const std::string& graph_path, const std::string& matrix_path,
                   const std::string& kind) {
  Multigraph h = load_graph(graph_path);
  WeightedMatrix a = load_matrix(matrix_path);
  Rat value = kind == "tinj" ? t_inj(h, a) : t(h, a);
  return {rat_to_string(value) + "\n",
          "density " + kind + " of " + graph_path + " at " + matrix_path};
}

Output run_decompose(const std::string& poly_path, const std::string& kind,
                     std::optional<int> max_edges) {
  EdgePolynomial f = load_polynomial(poly_path);
  DensityCoefficients c;
  if (kind == "tinj") {
    std::int64_t d = f.degree();
    if (!f.is_zero() && !f.is_homogeneous(d))
      throw std::invalid_argument(
          "tinj decomposition needs a homogeneous polynomial; pass --kind t "
          "with --N for mixed degrees");
    c = decompose_tinj(f, std::max<std::int64_t>(d, 0));
  } else {
    if (!max_edges)
      throw std::invalid_argument("--N is required for --kind t");
    c = decompose_t(f, *max_edges);
  }
  return {to_text(c), "decomposed " + poly_path + " into " +
                          std::to_string(c.coeffs.size()) + " coefficients"};
}

Output run_derive(const std::string& poly_path, const std::string& matrix_path,
                  int order, std::uint64_t seed, double step) {
  EdgePolynomial f = load_polynomial(poly_path);
  WeightedMatrix a = load_matrix(matrix_path);
  if (!a.in_unit_range())
    throw std::invalid_argument("derive: base matrix must be [0,1]-valued");
  DerivativeRequest req(a, {});
  for (int l = 0; l < order; ++l)
    req.directions.push_back(
        make_admissible(a, random_direction(a.size(), seed + l)));
  GateauxResult exact = gateaux_exact(f, req);
  nlohmann::ordered_json j;
  j["order"] = order;
  j["seed"] = seed;
  j["exact"] = rat_to_string(exact.value);
  if (step > 0) {
    FdEstimate fd = gateaux_fd(
        [&](const WeightedMatrix& point) { return rat_to_double(evaluate(f, point)); },
        req, step);
    nlohmann::ordered_json fdj;
    fdj["value"] = fd.value;
    fdj["step"] = fd.step;
    fdj["mode"] = fd.forward ? "forward" : "central";
    j["fd"] = std::move(fdj);
  }
  return {j.dump(2) + "\n", "order-" + std::to_string(order) +
                                " derivative with seeded directions"};
}

Output run_cutnorm(const std::string& matrix_path, int limit) {
  WeightedMatrix a = load_matrix(matrix_path);
  CutNormResult r = cut_norm_exact(a, limit);
  return {to_text(r), "cut norm of " + matrix_path};
}

Output run_l1(const std::vector<std::string>& matrix_paths) {
  WeightedMatrix a = load_matrix(matrix_paths[0]);
  WeightedMatrix b = load_matrix(matrix_paths[1]);
  L1Result r = l1_distance(a, b);
  nlohmann::ordered_json j;
  j["total"] = rat_to_string(r.total);
  j["off_diagonal_blocks"] = rat_to_string(r.off_diagonal_blocks);
  return {j.dump(2) + "\n", "L1 distance of the embedded step functions"};
}

Output run_verify_if(const std::string& coeffs_path, int max_edges, int n,
                     int trials, std::uint64_t seed) {
  DensityCoefficients c = load_coefficients(coeffs_path);
  TheoremReport r = verify_if(c, max_edges, n, trials, seed);
  return {to_text(r), "verify-if verdict: " + r.verdict};
}

Output run_verify_only_if(const std::string& poly_path, int max_edges,
                          int blow_up, std::uint64_t seed) {
  EdgePolynomial f = load_polynomial(poly_path);
  TheoremReport r = verify_only_if(f, max_edges, blow_up, seed);
  return {to_text(r), "verify-only-if verdict: " + r.verdict};
}

Output run_demo_l1(const std::string& target_name, const std::string& graph_path,
                   const std::vector<int>& sizes) {
  GraphonTarget target = parse_target(target_name);
  Multigraph h = load_graph(graph_path);
  auto rows = l1_density_demo(target, h, sizes);
  return {demo_table_text(target, h, rows),
          "discretization demo over " + std::to_string(sizes.size()) + " sizes"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "graphon: exact homomorphism-density calculus on edge-weighted graphs"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write machine output to a file")
      ->capture_default_str();

  int edges = 0;
  std::optional<int> max_vertices;
  auto* cmd_enumerate =
      app.add_subcommand("enumerate", "list multigraph isomorphism classes");
  cmd_enumerate->add_option("--edges", edges, "edge count (with multiplicity)")
      ->required();
  cmd_enumerate->add_option("--max-vertices", max_vertices,
                            "restrict to at most this many vertices");

  std::string graph_path, matrix_path, poly_path, coeffs_path, kind = "t";
  auto* cmd_density =
      app.add_subcommand("density", "homomorphism density of a multigraph");
  cmd_density->add_option("--graph", graph_path, "multigraph file")->required();
  cmd_density->add_option("--matrix", matrix_path, "matrix file")->required();
  cmd_density->add_option("--kind", kind, "basis: t or tinj")
      ->check(CLI::IsMember({"t", "tinj"}));

  std::string dec_kind = "t";
  std::optional<int> dec_n;
  auto* cmd_decompose = app.add_subcommand(
      "decompose", "write a class polynomial in a density basis");
  cmd_decompose->add_option("--poly", poly_path, "polynomial file")->required();
  cmd_decompose->add_option("--kind", dec_kind, "basis: t or tinj")
      ->check(CLI::IsMember({"t", "tinj"}));
  cmd_decompose->add_option("--N", dec_n, "max edges for the t basis");

  int order = 1;
  std::uint64_t seed = 0;
  double step = 1e-3;
  auto* cmd_derive = app.add_subcommand(
      "derive", "mixed Gateaux derivative along seeded admissible directions");
  cmd_derive->add_option("--poly", poly_path, "polynomial file")->required();
  cmd_derive->add_option("--matrix", matrix_path, "base point file")->required();
  cmd_derive->add_option("--order", order, "derivative order")->required();
  cmd_derive->add_option("--seed", seed, "direction seed")->required();
  cmd_derive->add_option("--step", step,
                         "finite-difference step (0 skips the estimate)");

  int cut_limit = 16;
  auto* cmd_cutnorm = app.add_subcommand("cutnorm", "exact matrix cut norm");
  cmd_cutnorm->add_option("--matrix", matrix_path, "matrix file")->required();
  cmd_cutnorm->add_option("--limit", cut_limit, "exhaustive-scan size limit");

  std::vector<std::string> l1_paths;
  auto* cmd_l1 = app.add_subcommand("l1", "exact L1 distance of step graphons");
  cmd_l1->add_option("--matrix", l1_paths, "two matrix files")
      ->expected(2)
      ->required();

  int ve_n = 0, ve_edges = 0, trials = 5;
  auto* cmd_vif = app.add_subcommand(
      "verify-if", "t-basis combinations have vanishing (N+1)-derivatives");
  cmd_vif->add_option("--coeffs", coeffs_path, "coefficients file")->required();
  cmd_vif->add_option("--N", ve_edges, "max edges N")->required();
  cmd_vif->add_option("--n", ve_n, "matrix size")->required();
  cmd_vif->add_option("--trials", trials, "seeded exact difference checks");
  cmd_vif->add_option("--seed", seed, "trial seed")->required();

  int blow_up = 2, voi_edges = 0;
  auto* cmd_voi = app.add_subcommand(
      "verify-only-if",
      "vanishing (N+1)-derivatives force a unique t-basis expansion");
  cmd_voi->add_option("--poly", poly_path, "polynomial file")->required();
  cmd_voi->add_option("--N", voi_edges, "max edges N")->required();
  cmd_voi->add_option("--blowup", blow_up, "blow-up factor");
  cmd_voi->add_option("--seed", seed, "seed for witness search and spot checks");

  std::string target = "xy";
  std::vector<int> sizes = {2, 4, 8, 16};
  auto* cmd_demo = app.add_subcommand(
      "demo-l1", "density of discretized analytic graphons along a size ladder");
  cmd_demo->add_option("--target", target, "xy, min, or const:<p>")->required();
  cmd_demo->add_option("--graph", graph_path, "multigraph file")->required();
  cmd_demo->add_option("--sizes", sizes, "grid sizes")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Output out;
    if (cmd_enumerate->parsed()) {
      out = run_enumerate(edges, max_vertices);
    } else if (cmd_density->parsed()) {
      out = run_density(graph_path, matrix_path, kind);
    } else if (cmd_decompose->parsed()) {
      out = run_decompose(poly_path, dec_kind, dec_n);
    } else if (cmd_derive->parsed()) {
      out = run_derive(poly_path, matrix_path, order, seed, step);
    } else if (cmd_cutnorm->parsed()) {
      out = run_cutnorm(matrix_path, cut_limit);
    } else if (cmd_l1->parsed()) {
      out = run_l1(l1_paths);
    } else if (cmd_vif->parsed()) {
      out = run_verify_if(coeffs_path, ve_edges, ve_n, trials, seed);
    } else if (cmd_voi->parsed()) {
      out = run_verify_only_if(poly_path, voi_edges, blow_up, seed);
    } else if (cmd_demo->parsed()) {
      out = run_demo_l1(target, graph_path, sizes);
    }
    // Output is assembled fully before anything is written, so a failed
    // run never leaves a partial file behind.
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
      f << out.machine;
    } else {
      std::cout << out.machine;
    }
    std::cerr << out.summary << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
