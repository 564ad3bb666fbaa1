#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace graphon {

struct Edge {
  int u = 0;
  int v = 0;
  std::int64_t mult = 1;
};

// Canonical isomorphism-class representative of a loopless multigraph with
// no isolated vertices. Vertices are 0-based internally; text files use
// 1-based labels. Two Multigraph values compare equal exactly when the
// underlying multigraphs are isomorphic.
class Multigraph {
 public:
  // Drops isolated vertices, relabels, and picks the canonical labeling.
  // Vertex labels in raw_edges must lie in [0, vertex_count); self-loops
  // are rejected.
  static Multigraph canonicalize(int vertex_count, std::vector<Edge> raw_edges);

  static Multigraph empty();

  int vertex_count() const { return vertex_count_; }
  // Total edge count, multiplicities included.
  std::int64_t edge_count() const;
  int distinct_edge_count() const { return static_cast<int>(edges_.size()); }
  bool is_empty() const { return vertex_count_ == 0; }
  bool is_simple() const;

  // Edges in canonical labels, u < v, sorted by (u, v).
  const std::vector<Edge>& edges() const { return edges_; }
  std::int64_t multiplicity(int u, int v) const;

  const std::vector<unsigned char>& canonical_form() const { return form_; }
  std::string canonical_hex() const;

  bool operator==(const Multigraph& o) const {
    return form_ == o.form_;
  }
  // Enumeration order: edge count, then vertex count, then canonical form.
  std::strong_ordering operator<=>(const Multigraph& o) const;

 private:
  Multigraph() = default;
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<unsigned char> form_;
};

// |Aut(H)|: vertex bijections preserving edge multiplicities.
std::int64_t automorphism_count(const Multigraph& h);

// Isomorphism classes of multigraphs with edge_count edges (counting
// multiplicity), optionally restricted to at most max_vertices vertices.
// Sorted by (vertex count, canonical form).
std::vector<Multigraph> enumerate_multigraphs(
    int edge_count, std::optional<int> max_vertices = std::nullopt);

// Union of enumerate_multigraphs(d) for d = 0..max_edges, in that order.
std::vector<Multigraph> enumerate_multigraphs_up_to(int max_edges);

struct VertexPartition {
  // Disjoint nonempty blocks covering [0, vertex_count), each block sorted,
  // blocks ordered by smallest element.
  std::vector<std::vector<int>> blocks;
};

// All vertex partitions whose blocks contain no adjacent pair, each paired
// with the quotient multigraph (multiplicities summed across merged pairs).
// Always contains the identity partition.
std::vector<std::pair<VertexPartition, Multigraph>> loopless_quotients(
    const Multigraph& h);

// Clamps every multiplicity to 1. Preserves the vertex count.
Multigraph collapse_simple(const Multigraph& h);

Multigraph disjoint_union(const Multigraph& a, const Multigraph& b);

// Text format: first line "V E", then E lines "u v m" with 1-based
// endpoints and multiplicity m >= 1. Lines starting with '#' are skipped.
Multigraph parse_multigraph(std::istream& in);
Multigraph parse_multigraph_text(const std::string& text);
std::string to_text(const Multigraph& h);

}  // namespace graphon
