#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "graphon/classpoly.hpp"
#include "graphon/homdensity.hpp"
#include "graphon/multigraph.hpp"
#include "graphon/weighted_graph.hpp"

using namespace graphon;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

const fs::path& workspace() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("graphon_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

RunResult run_cli(const std::string& args) {
  fs::path out = workspace() / "stdout.txt";
  fs::path err = workspace() / "stderr.txt";
  std::string cmd = std::string(GRAPHON_CLI_PATH) + " " + args + " > " +
                    out.string() + " 2> " + err.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_file(const std::string& name, const std::string& content) {
  fs::path p = workspace() / name;
  spit(p, content);
  return p;
}

}  // namespace

TEST_CASE("enumerate lists the three two-edge classes in canonical order") {
  auto r = run_cli("enumerate --edges 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "# id=0202\n"
        "2 1\n"
        "1 2 2\n"
        "\n"
        "# id=03000101\n"
        "3 2\n"
        "1 3 1\n"
        "2 3 1\n"
        "\n"
        "# id=04000001010000\n"
        "4 2\n"
        "1 4 1\n"
        "2 3 1\n"
        "\n");
  CHECK(r.err.find("3 multigraph(s)") != std::string::npos);

  auto capped = run_cli("enumerate --edges 2 --max-vertices 3");
  CHECK(capped.exit_code == 0);
  CHECK(capped.out.find("04") == std::string::npos);
}

TEST_CASE("density evaluates a graph file against a matrix file") {
  auto g = write_file("path2.mg", "3 2\n1 2 1\n2 3 1\n");
  auto m = write_file("ones.mat", R"({"n":2,"rows":[["0","1"],["1","0"]]})");
  auto r = run_cli("density --graph " + g.string() + " --matrix " + m.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1/4\n");
  auto rinj = run_cli("density --graph " + g.string() + " --matrix " +
                      m.string() + " --kind tinj");
  CHECK(rinj.out == "0\n");
}

TEST_CASE("decompose recovers t-basis coefficients through files") {
  auto path2 = Multigraph::canonicalize(3, {{0, 1, 1}, {1, 2, 1}});
  auto poly = write_file(
      "path_density.poly",
      to_text(density_polynomial(path2, DensityBasis::T, 4)));
  auto r = run_cli("decompose --poly " + poly.string() + " --kind t --N 2");
  CHECK(r.exit_code == 0);
  auto c = parse_density_coefficients_text(r.out);
  CHECK(c.basis == DensityBasis::T);
  CHECK(c.coeffs.size() == 1);
  CHECK(c.get(path2) == 1);

  // byte-identical reruns
  auto again = run_cli("decompose --poly " + poly.string() + " --kind t --N 2");
  CHECK(again.out == r.out);
}

TEST_CASE("decompose rejects non-class functions with a nonzero exit") {
  auto poly = write_file("skew.poly",
                         to_text(EdgePolynomial::variable(3, 0, 1)));
  auto r = run_cli("decompose --poly " + poly.string() + " --kind tinj");
  CHECK(r.exit_code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("class function") != std::string::npos);
}

TEST_CASE("cutnorm emits the witness JSON") {
  auto m = write_file("ones2.mat", R"({"n":2,"rows":[["0","1"],["1","0"]]})");
  auto r = run_cli("cutnorm --matrix " + m.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "{\n  \"value\": \"1/2\",\n  \"S\": [\n    1,\n    2\n  ],\n"
        "  \"T\": [\n    1,\n    2\n  ]\n}\n");
}

TEST_CASE("l1 compares step functions of different sizes") {
  auto a = write_file("a.mat", R"({"n":2,"rows":[["0","1"],["1","0"]]})");
  auto b = write_file("b.mat",
                      R"({"n":3,"rows":[["0","0","0"],["0","0","0"],["0","0","0"]]})");
  auto r = run_cli("l1 --matrix " + a.string() + " --matrix " + b.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"total\": \"1/2\"") != std::string::npos);
}

TEST_CASE("derive reports exact and finite-difference values") {
  auto poly = write_file(
      "double.poly",
      to_text(density_polynomial(Multigraph::canonicalize(2, {{0, 1, 2}}),
                                 DensityBasis::T, 3)));
  auto m = write_file("half.mat",
                      R"({"n":3,"rows":[["0","1/2","1/2"],["1/2","0","1/2"],["1/2","1/2","0"]]})");
  auto r = run_cli("derive --poly " + poly.string() + " --matrix " + m.string() +
                   " --order 1 --seed 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"exact\"") != std::string::npos);
  CHECK(r.out.find("\"mode\": \"central\"") != std::string::npos);
}

TEST_CASE("verify-only-if prints a verified report") {
  auto path2 = Multigraph::canonicalize(3, {{0, 1, 1}, {1, 2, 1}});
  auto poly = write_file(
      "pd.poly", to_text(density_polynomial(path2, DensityBasis::T, 4)));
  auto r = run_cli("verify-only-if --poly " + poly.string() + " --N 2 --blowup 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("verdict: verified") != std::string::npos);
  auto again =
      run_cli("verify-only-if --poly " + poly.string() + " --N 2 --blowup 2");
  CHECK(again.out == r.out);
}

TEST_CASE("verify-if reads coefficient files") {
  DensityCoefficients c;
  c.basis = DensityBasis::T;
  c.ambient_n = 2;
  c.set(Multigraph::canonicalize(2, {{0, 1, 1}}), Rat(1));
  auto file = write_file("edge.dc", to_text(c));
  auto r = run_cli("verify-if --coeffs " + file.string() +
                   " --N 1 --n 2 --trials 3 --seed 6");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("verdict: verified") != std::string::npos);
}

TEST_CASE("demo-l1 prints the convergence table") {
  auto g = write_file("k2.mg", "2 1\n1 2 1\n");
  auto r = run_cli("demo-l1 --target const:1/2 --graph " + g.string() +
                   " --sizes 2,4");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "l1-density-demo\n"
        "target: const:1/2\n"
        "graph: [V=2 1-2x1]\n"
        "n density analytic gap\n"
        "2 1/4 1/2 1/4\n"
        "4 3/8 1/2 1/8\n");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("enumerate").exit_code == 2);          // missing --edges
  CHECK(run_cli("density --graph x").exit_code == 2);  // missing --matrix
  CHECK(run_cli("").exit_code == 2);                   // subcommand required
}

TEST_CASE("missing and malformed files exit with 1 and context") {
  auto r = run_cli("density --graph /nonexistent.mg --matrix /nonexistent.mat");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("/nonexistent.mg") != std::string::npos);

  auto bad = write_file("bad.mg", "2 1\n1 1 1\n");
  auto m = write_file("m.mat", R"({"n":2,"rows":[["0","1"],["1","0"]]})");
  auto r2 =
      run_cli("density --graph " + bad.string() + " --matrix " + m.string());
  CHECK(r2.exit_code == 1);
  CHECK(r2.err.find("bad.mg") != std::string::npos);
  CHECK(r2.err.find("self-loop") != std::string::npos);
}

TEST_CASE("--out writes complete files only") {
  fs::path target = workspace() / "enum_out.txt";
  fs::remove(target);
  auto r = run_cli("--out " + target.string() + " enumerate --edges 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(target) == run_cli("enumerate --edges 1").out);

  fs::path never = workspace() / "never.txt";
  fs::remove(never);
  auto bad = write_file("skew2.poly", to_text(EdgePolynomial::variable(3, 0, 1)));
  auto r2 = run_cli("--out " + never.string() + " decompose --poly " +
                    bad.string() + " --kind tinj");
  CHECK(r2.exit_code == 1);
  CHECK_FALSE(fs::exists(never));
}
