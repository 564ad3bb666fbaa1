#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "graphon/multigraph.hpp"
#include "test_oracles.hpp"

using namespace graphon;

namespace {

Multigraph k2() { return Multigraph::canonicalize(2, {{0, 1, 1}}); }
Multigraph double_edge() { return Multigraph::canonicalize(2, {{0, 1, 2}}); }
Multigraph path2() {
  return Multigraph::canonicalize(3, {{0, 1, 1}, {1, 2, 1}});
}
Multigraph two_edges() {
  return Multigraph::canonicalize(4, {{0, 1, 1}, {2, 3, 1}});
}
Multigraph triangle() {
  return Multigraph::canonicalize(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
}

oracle::RawGraph raw(const Multigraph& h) {
  oracle::RawGraph g;
  g.v = h.vertex_count();
  for (const auto& e : h.edges()) g.edges[{e.u, e.v}] = e.mult;
  return g;
}

}  // namespace

TEST_CASE("canonicalize drops isolated vertices and relabels") {
  Multigraph h = Multigraph::canonicalize(6, {{1, 4, 1}});
  CHECK(h.vertex_count() == 2);
  CHECK(h.edge_count() == 1);
  CHECK(h == k2());
}

TEST_CASE("isomorphic inputs share one canonical form") {
  Multigraph a = Multigraph::canonicalize(3, {{0, 1, 1}, {1, 2, 1}});
  Multigraph b = Multigraph::canonicalize(3, {{0, 2, 1}, {2, 1, 1}});
  CHECK(a == b);
  CHECK(a.canonical_hex() == b.canonical_hex());
}

TEST_CASE("double edge is a distinct class from the single edge") {
  CHECK(double_edge() != k2());
  CHECK_FALSE(oracle::isomorphic(raw(double_edge()), raw(k2())));
}

TEST_CASE("self-loops are rejected with their location") {
  CHECK_THROWS_WITH_AS(Multigraph::canonicalize(3, {{1, 1, 1}}),
                       doctest::Contains("self-loop at vertex 1"),
                       std::invalid_argument);
  CHECK_THROWS_AS(Multigraph::canonicalize(2, {{0, 3, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Multigraph::canonicalize(2, {{0, 1, 0}}),
                  std::invalid_argument);
}

TEST_CASE("enumerate matches the small hand counts") {
  auto h0 = enumerate_multigraphs(0);
  REQUIRE(h0.size() == 1);
  CHECK(h0[0].is_empty());

  auto h1 = enumerate_multigraphs(1);
  REQUIRE(h1.size() == 1);
  CHECK(h1[0] == k2());

  auto h2 = enumerate_multigraphs(2);
  REQUIRE(h2.size() == 3);
  std::set<Multigraph> classes(h2.begin(), h2.end());
  CHECK(classes.count(double_edge()));
  CHECK(classes.count(path2()));
  CHECK(classes.count(two_edges()));
}

TEST_CASE("enumerate agrees with the exhaustive dedup oracle") {
  for (int d = 0; d <= 3; ++d) {
    auto mine = enumerate_multigraphs(d);
    auto ref = oracle::enumerate_classes(d, 2 * d);
    REQUIRE(mine.size() == ref.size());
    // The oracle classes map one-to-one onto canonical forms.
    std::set<Multigraph> seen;
    for (const auto& g : ref) {
      std::vector<Edge> edges;
      for (const auto& [pr, m] : g.edges) edges.push_back({pr.first, pr.second, m});
      seen.insert(Multigraph::canonicalize(std::max(g.v, 1), std::move(edges)));
    }
    if (d == 0) seen.insert(Multigraph::empty());
    CHECK(seen == std::set<Multigraph>(mine.begin(), mine.end()));
  }
}

TEST_CASE("enumerate is sorted and monotone in the vertex cap") {
  for (int d = 1; d <= 3; ++d) {
    auto full = enumerate_multigraphs(d);
    CHECK(std::is_sorted(full.begin(), full.end()));
    std::size_t prev = 0;
    for (int cap = 0; cap <= 2 * d + 1; ++cap) {
      auto capped = enumerate_multigraphs(d, cap);
      CHECK(capped.size() >= prev);
      prev = capped.size();
      if (cap >= 2 * d) CHECK(capped.size() == full.size());
    }
  }
}

TEST_CASE("enumerate_up_to concatenates the degree layers") {
  CHECK(enumerate_multigraphs_up_to(0).size() == 1);
  auto up1 = enumerate_multigraphs_up_to(1);
  REQUIRE(up1.size() == 2);
  CHECK(up1[0].is_empty());
  CHECK(up1[1] == k2());
  auto up2 = enumerate_multigraphs_up_to(2);
  CHECK(up2.size() == 5);
  // stable prefix
  for (std::size_t i = 0; i < up1.size(); ++i) CHECK(up2[i] == up1[i]);
}

TEST_CASE("automorphism counts") {
  CHECK(automorphism_count(k2()) == 2);
  CHECK(automorphism_count(triangle()) == 6);
  CHECK(automorphism_count(path2()) == 2);
  CHECK(automorphism_count(Multigraph::empty()) == 1);
  for (const auto& h : enumerate_multigraphs_up_to(3)) {
    CHECK(automorphism_count(h) == oracle::automorphism_count(raw(h)));
    std::int64_t fact = 1;
    for (int k = 2; k <= h.vertex_count(); ++k) fact *= k;
    if (h.vertex_count() > 0) CHECK(fact % automorphism_count(h) == 0);
  }
}

TEST_CASE("loopless quotients of the hand examples") {
  auto qe = loopless_quotients(k2());
  REQUIRE(qe.size() == 1);
  CHECK(qe[0].second == k2());
  CHECK(qe[0].first.blocks.size() == 2);

  auto qp = loopless_quotients(path2());
  REQUIRE(qp.size() == 2);
  std::multiset<Multigraph> quots;
  for (const auto& [p, q] : qp) quots.insert(q);
  CHECK(quots.count(path2()) == 1);
  CHECK(quots.count(double_edge()) == 1);

  auto qt = loopless_quotients(two_edges());
  REQUIRE(qt.size() == 7);
  std::multiset<Multigraph> quots2;
  for (const auto& [p, q] : qt) quots2.insert(q);
  CHECK(quots2.count(two_edges()) == 1);
  CHECK(quots2.count(path2()) == 4);
  CHECK(quots2.count(double_edge()) == 2);
}

TEST_CASE("quotients preserve edge count and include the identity") {
  for (const auto& h : enumerate_multigraphs_up_to(3)) {
    bool identity_seen = false;
    for (const auto& [p, q] : loopless_quotients(h)) {
      CHECK(q.edge_count() == h.edge_count());
      if (q == h && static_cast<int>(p.blocks.size()) == h.vertex_count())
        identity_seen = true;
      // blocks are disjoint, nonempty, and cover all vertices
      std::set<int> covered;
      for (const auto& b : p.blocks) {
        CHECK_FALSE(b.empty());
        for (int x : b) CHECK(covered.insert(x).second);
      }
      CHECK(static_cast<int>(covered.size()) == h.vertex_count());
    }
    CHECK(identity_seen);
  }
}

TEST_CASE("collapse_simple") {
  CHECK(collapse_simple(double_edge()) == k2());
  Multigraph tri_doubled =
      Multigraph::canonicalize(3, {{0, 1, 2}, {1, 2, 1}, {0, 2, 1}});
  CHECK(collapse_simple(tri_doubled) == triangle());
  for (const auto& h : enumerate_multigraphs_up_to(3)) {
    Multigraph s = collapse_simple(h);
    CHECK(s.is_simple());
    CHECK(s.vertex_count() == h.vertex_count());
    CHECK(collapse_simple(s) == s);
  }
}

TEST_CASE("canonicalize is idempotent and label-invariant") {
  std::mt19937_64 rng(7);
  for (const auto& h : enumerate_multigraphs_up_to(3)) {
    CHECK(Multigraph::canonicalize(h.vertex_count(), h.edges()) == h);
    int v = h.vertex_count();
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> perm(v);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Edge> relabeled;
      for (const auto& e : h.edges())
        relabeled.push_back({perm[e.u], perm[e.v], e.mult});
      CHECK(Multigraph::canonicalize(v, std::move(relabeled)) == h);
    }
  }
}

TEST_CASE("canonical form minimizes over all labelings") {
  // Recompute the canonical byte vector by exhaustive minimization: the
  // flat upper triangle in column-completion order, over every labeling.
  for (const auto& h : enumerate_multigraphs_up_to(3)) {
    int v = h.vertex_count();
    if (v == 0) continue;
    std::vector<std::vector<std::int64_t>> mult(
        v, std::vector<std::int64_t>(v, 0));
    for (const auto& e : h.edges()) {
      mult[e.u][e.v] = e.mult;
      mult[e.v][e.u] = e.mult;
    }
    std::vector<int> placed(v);
    std::iota(placed.begin(), placed.end(), 0);
    std::vector<std::int64_t> best;
    do {
      std::vector<std::int64_t> flat;
      for (int j = 1; j < v; ++j)
        for (int i = 0; i < j; ++i) flat.push_back(mult[placed[i]][placed[j]]);
      if (best.empty() || flat < best) best = flat;
    } while (std::next_permutation(placed.begin(), placed.end()));
    std::vector<unsigned char> expect = {static_cast<unsigned char>(v)};
    for (std::int64_t m : best) expect.push_back(static_cast<unsigned char>(m));
    CHECK(h.canonical_form() == expect);
  }
}

TEST_CASE("canonicalize is label-invariant on random multigraphs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    int v = 2 + static_cast<int>(rng() % 6);
    std::vector<Edge> edges;
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j)
        if (rng() % 3 == 0)
          edges.push_back({i, j, static_cast<std::int64_t>(1 + rng() % 5)});
    Multigraph h = Multigraph::canonicalize(v, edges);
    std::vector<int> perm(v);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> relabeled;
    for (const auto& e : edges) relabeled.push_back({perm[e.u], perm[e.v], e.mult});
    CHECK(Multigraph::canonicalize(v, std::move(relabeled)) == h);
  }
}

TEST_CASE("large multiplicities take the escaped byte encoding") {
  Multigraph big = Multigraph::canonicalize(2, {{0, 1, 300}});
  CHECK(big.canonical_hex() == "02ff0000012c");  // 300 = 0x12c
  CHECK(parse_multigraph_text(to_text(big)) == big);
  CHECK(big != Multigraph::canonicalize(2, {{0, 1, 299}}));
  CHECK(big.multiplicity(0, 1) == 300);
}

TEST_CASE("disjoint union") {
  CHECK(disjoint_union(k2(), k2()) == two_edges());
  CHECK(disjoint_union(Multigraph::empty(), path2()) == path2());
}

TEST_CASE("text round trip") {
  for (const auto& h : enumerate_multigraphs_up_to(3)) {
    CHECK(parse_multigraph_text(to_text(h)) == h);
  }
  // comments and blank lines are skipped
  CHECK(parse_multigraph_text("# a comment\n\n2 1\n# another\n1 2 2\n") ==
        double_edge());
}

TEST_CASE("parse errors carry line context") {
  CHECK_THROWS_WITH_AS(parse_multigraph_text(""),
                       doctest::Contains("missing header"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_multigraph_text("2 1\n1 1 1\n"),
                       doctest::Contains("self-loop"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_multigraph_text("2 2\n1 2 1\n2 1 1\n"),
                       doctest::Contains("duplicate edge"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_multigraph_text("2 1\n1 5 1\n"),
                       doctest::Contains("line 2"), std::runtime_error);
  CHECK_THROWS_AS(parse_multigraph_text("2 1\n"), std::runtime_error);
}

TEST_CASE("canonical hex ids") {
  CHECK(Multigraph::empty().canonical_hex() == "00");
  std::set<std::string> ids;
  for (const auto& h : enumerate_multigraphs_up_to(2))
    ids.insert(h.canonical_hex());
  CHECK(ids.size() == 5);
}
