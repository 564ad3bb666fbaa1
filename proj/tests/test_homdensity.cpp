#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "graphon/homdensity.hpp"
#include "test_oracles.hpp"

using namespace graphon;

namespace {

Multigraph k2() { return Multigraph::canonicalize(2, {{0, 1, 1}}); }
Multigraph double_edge() { return Multigraph::canonicalize(2, {{0, 1, 2}}); }
Multigraph path2() {
  return Multigraph::canonicalize(3, {{0, 1, 1}, {1, 2, 1}});
}
Multigraph triangle() {
  return Multigraph::canonicalize(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
}

WeightedMatrix ones(int n) {
  std::vector<std::vector<Rat>> e(n, std::vector<Rat>(n, Rat(1)));
  for (int i = 0; i < n; ++i) e[i][i] = 0;
  return WeightedMatrix::make(std::move(e));
}

}  // namespace

TEST_CASE("density hand values") {
  CHECK(t(k2(), ones(2)) == Rat(1, 2));
  CHECK(t(triangle(), ones(3)) == Rat(2, 9));
  CHECK(t(path2(), ones(2)) == Rat(1, 4));
  CHECK(t(k2(), WeightedMatrix::zero(3)) == 0);
  CHECK(t(Multigraph::empty(), ones(2)) == 1);
}

TEST_CASE("injective density hand values") {
  CHECK(t_inj(k2(), ones(2)) == Rat(1, 2));
  CHECK(t_inj(path2(), ones(2)) == 0);  // no 3 distinct vertices in [2]
  CHECK(t_inj(double_edge(), ones(2)) == Rat(1, 2));
  CHECK(t_inj(Multigraph::empty(), ones(2)) == 1);
}

TEST_CASE("the two engines and the embedding route agree exactly") {
  auto basis = enumerate_multigraphs_up_to(3);
  for (int n = 2; n <= 5; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto a = random_matrix(n, 100 * n + seed, ValueMode::RationalGrid);
      for (const auto& h : basis) {
        Rat fast = t(h, a);
        CHECK(fast == t_reference(h, a));
        CHECK(fast == graphon_density_consistency(h, a));
      }
    }
}

TEST_CASE("t_to_tinj on the hand cases") {
  auto ce = t_to_tinj(k2(), 5);
  REQUIRE(ce.coeffs.size() == 1);
  CHECK(ce.get(k2()) == 1);

  auto cp = t_to_tinj(path2(), 2);
  REQUIRE(cp.coeffs.size() == 2);
  CHECK(cp.get(path2()) == 1);
  CHECK(cp.get(double_edge()) == Rat(1, 2));
  // the worked identity at n=2: 1/4 = 0 + (1/2)(1/2)
  auto a = ones(2);
  CHECK(t(path2(), a) == Rat(1, 4));
  CHECK(t_inj(path2(), a) == 0);
  CHECK(t_inj(double_edge(), a) == Rat(1, 2));
  CHECK(t(path2(), a) ==
        cp.get(path2()) * t_inj(path2(), a) +
            cp.get(double_edge()) * t_inj(double_edge(), a));
}

TEST_CASE("triangular identity holds exactly on random matrices") {
  for (const auto& h : enumerate_multigraphs_up_to(3))
    for (int n = 3; n <= 5; ++n)
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto a = random_matrix(n, 31 * n + seed, ValueMode::RationalGrid);
        CHECK(t(h, a) == evaluate_density_sum(t_to_tinj(h, n), a));
      }
}

TEST_CASE("transform matrix structure") {
  auto one = transform_matrix({k2()}, 3, TransformDirection::TFromTInj);
  REQUIRE(one.entries.size() == 1);
  CHECK(one.entries[0][0] == 1);

  auto basis = enumerate_multigraphs_up_to(2);
  REQUIRE(basis.size() == 5);
  auto m = transform_matrix(basis, 4, TransformDirection::TFromTInj);
  auto inv = transform_matrix(basis, 4, TransformDirection::TInjFromT);
  int path_row = -1, double_col = -1;
  for (int i = 0; i < 5; ++i) {
    if (basis[i] == path2()) path_row = i;
    if (basis[i] == double_edge()) double_col = i;
  }
  REQUIRE(path_row >= 0);
  REQUIRE(double_col >= 0);
  CHECK(m.entries[path_row][double_col] == Rat(1, 4));
  for (int i = 0; i < 5; ++i) {
    CHECK(m.entries[i][i] == 1);
    for (int j = i + 1; j < 5; ++j) CHECK(m.entries[i][j] == 0);
  }
  // the two directions are inverse to each other
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      Rat sum(0);
      for (int k = 0; k < 5; ++k) sum += m.entries[i][k] * inv.entries[k][j];
      CHECK(sum == (i == j ? 1 : 0));
    }
}

TEST_CASE("transform matrix rejects bad bases") {
  // missing the double edge, a quotient of the path
  CHECK_THROWS_WITH_AS(
      transform_matrix({path2()}, 4, TransformDirection::TFromTInj),
      doctest::Contains("not closed"), std::invalid_argument);
  // five-vertex class cannot be inverted on a 4-point ground set
  auto big = Multigraph::canonicalize(5, {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}});
  CHECK_THROWS_AS(
      transform_matrix({double_edge(), big}, 4, TransformDirection::TInjFromT),
      std::invalid_argument);
  CHECK_THROWS_AS(
      transform_matrix({k2(), k2()}, 4, TransformDirection::TFromTInj),
      std::invalid_argument);
}

TEST_CASE("density is multiplicative over disjoint unions") {
  auto basis = enumerate_multigraphs_up_to(2);
  for (const auto& h1 : basis)
    for (const auto& h2 : basis) {
      auto u = disjoint_union(h1, h2);
      for (std::uint64_t seed = 0; seed < 2; ++seed) {
        auto a = random_matrix(4, 500 + seed, ValueMode::RationalGrid);
        CHECK(t(u, a) == t(h1, a) * t(h2, a));
      }
    }
}

TEST_CASE("density is invariant under vertex permutations") {
  std::mt19937_64 rng(11);
  for (const auto& h : enumerate_multigraphs_up_to(3)) {
    auto a = random_matrix(5, 77, ValueMode::RationalGrid);
    std::vector<int> perm = {0, 1, 2, 3, 4};
    for (int trial = 0; trial < 4; ++trial) {
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(t(h, permute(a, perm)) == t(h, a));
    }
  }
}

TEST_CASE("density is invariant under blow-ups") {
  for (const auto& h : enumerate_multigraphs_up_to(3))
    for (int n = 2; n <= 3; ++n)
      for (int k = 2; k <= 3; ++k) {
        auto a = random_matrix(n, 900 + n + k, ValueMode::RationalGrid);
        CHECK(t(h, blow_up(a, k)) == t(h, a));
      }
}

TEST_CASE("densities of [0,1] matrices stay in [0,1]") {
  for (const auto& h : enumerate_multigraphs_up_to(3))
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto a = random_matrix(4, 40 + seed, ValueMode::RationalGrid);
      Rat v = t(h, a);
      CHECK(v >= 0);
      CHECK(v <= 1);
    }
}

TEST_CASE("multi-edge collapse is invisible to 0/1 matrices") {
  for (const auto& h : enumerate_multigraphs_up_to(3))
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto a = random_matrix(4, 60 + seed, ValueMode::ZeroOne);
      CHECK(t(h, a) == t(collapse_simple(h), a));
    }
}

TEST_CASE("coefficient file round trip") {
  DensityCoefficients c;
  c.basis = DensityBasis::TInj;
  c.ambient_n = 4;
  c.set(path2(), Rat(3, 7));
  c.set(double_edge(), Rat(-2));
  auto back = parse_density_coefficients_text(to_text(c));
  CHECK(back == c);
  CHECK_THROWS_WITH_AS(
      parse_density_coefficients_text(R"({"basis":"x","n":2,"coeffs":[]})"),
      doctest::Contains("basis"), std::runtime_error);
  CHECK_THROWS_AS(parse_density_coefficients_text("{}"), std::runtime_error);
}

TEST_CASE("zero coefficients are dropped") {
  DensityCoefficients c;
  c.set(k2(), Rat(1));
  c.set(k2(), Rat(0));
  CHECK(c.coeffs.empty());
  CHECK(c.get(k2()) == 0);
}
