#include "graphon/multigraph.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace graphon {

namespace {

using MultMatrix = std::vector<std::vector<std::int64_t>>;

// Flat canonical vector: upper-triangle multiplicities in column-major
// order (j = 1..v-1, i = 0..j-1). Assigning position j completes entries
// (0,j)..(j-1,j), so prefixes grow contiguously during the labeling search.
std::size_t column_offset(int j) {
  return static_cast<std::size_t>(j) * (j - 1) / 2;
}

struct CanonSearch {
  const MultMatrix& mult;
  int v;
  std::vector<int> placed;
  std::vector<bool> used;
  std::vector<std::int64_t> cur;
  std::vector<std::int64_t> best;
  bool have_best = false;

  explicit CanonSearch(const MultMatrix& m)
      : mult(m), v(static_cast<int>(m.size())), used(m.size(), false) {
    placed.reserve(m.size());
    cur.reserve(column_offset(v));
  }

  // Branch-and-bound over labelings minimizing the flat vector. `tie` means
  // the current prefix equals best's prefix; returns true if best changed,
  // in which case the caller's prefix matches the new best exactly.
  bool search(bool tie) {
    int pos = static_cast<int>(placed.size());
    if (pos == v) {
      if (!have_best || !tie) {
        best = cur;
        have_best = true;
        return true;
      }
      return false;
    }
    bool updated = false;
    struct Cand {
      std::vector<std::int64_t> chunk;
      int u;
    };
    std::vector<Cand> cands;
    for (int u = 0; u < v; ++u) {
      if (used[u]) continue;
      Cand c;
      c.u = u;
      c.chunk.reserve(pos);
      for (int i = 0; i < pos; ++i) c.chunk.push_back(mult[placed[i]][u]);
      cands.push_back(std::move(c));
    }
    // Smallest chunks first: the first leaf is near-minimal, which makes
    // the bound prune hard.
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.chunk < b.chunk; });
    std::size_t off = column_offset(pos);
    for (auto& c : cands) {
      bool newtie = tie;
      if (have_best && tie) {
        int cmp = 0;
        for (int i = 0; i < pos && cmp == 0; ++i) {
          if (c.chunk[i] < best[off + i]) cmp = -1;
          else if (c.chunk[i] > best[off + i]) cmp = 1;
        }
        if (cmp > 0) continue;
        if (cmp < 0) newtie = false;
      }
      placed.push_back(c.u);
      used[c.u] = true;
      cur.insert(cur.end(), c.chunk.begin(), c.chunk.end());
      if (search(newtie)) {
        updated = true;
        tie = true;  // our prefix is a prefix of the new best
      }
      cur.resize(cur.size() - c.chunk.size());
      used[c.u] = false;
      placed.pop_back();
    }
    return updated;
  }
};

std::vector<std::int64_t> canonical_flat(const MultMatrix& mult) {
  CanonSearch s(mult);
  s.search(true);
  return s.best;
}

void append_mult_byte(std::vector<unsigned char>& out, std::int64_t m) {
  if (m < 0 || m > 0x7fffffff)
    throw std::invalid_argument("edge multiplicity out of range");
  if (m < 255) {
    out.push_back(static_cast<unsigned char>(m));
  } else {
    out.push_back(0xff);
    for (int s = 24; s >= 0; s -= 8)
      out.push_back(static_cast<unsigned char>((m >> s) & 0xff));
  }
}

std::int64_t count_matching_labelings(const MultMatrix& mult,
                                      const std::vector<std::int64_t>& flat) {
  int v = static_cast<int>(mult.size());
  std::vector<int> placed;
  std::vector<bool> used(v, false);
  std::int64_t count = 0;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == v) {
      ++count;
      return;
    }
    std::size_t off = column_offset(pos);
    for (int u = 0; u < v; ++u) {
      if (used[u]) continue;
      bool ok = true;
      for (int i = 0; i < pos && ok; ++i)
        ok = mult[placed[i]][u] == flat[off + i];
      if (!ok) continue;
      placed.push_back(u);
      used[u] = true;
      self(self, pos + 1);
      used[u] = false;
      placed.pop_back();
    }
  };
  rec(rec, 0);
  return count;
}

MultMatrix mult_matrix(const Multigraph& h) {
  MultMatrix m(h.vertex_count(),
               std::vector<std::int64_t>(h.vertex_count(), 0));
  for (const auto& e : h.edges()) {
    m[e.u][e.v] = e.mult;
    m[e.v][e.u] = e.mult;
  }
  return m;
}

}  // namespace

Multigraph Multigraph::empty() {
  Multigraph g;
  g.form_ = {0};
  return g;
}

Multigraph Multigraph::canonicalize(int vertex_count,
                                    std::vector<Edge> raw_edges) {
  if (vertex_count < 0)
    throw std::invalid_argument("negative vertex count");
  std::map<std::pair<int, int>, std::int64_t> acc;
  for (const auto& e : raw_edges) {
    if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range: (" +
                                  std::to_string(e.u) + "," +
                                  std::to_string(e.v) + ")");
    if (e.u == e.v)
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.mult < 1)
      throw std::invalid_argument("nonpositive multiplicity on edge (" +
                                  std::to_string(e.u) + "," +
                                  std::to_string(e.v) + ")");
    acc[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.mult;
  }

  // Drop isolated vertices, relabel compactly.
  std::set<int> touched;
  for (const auto& [pr, m] : acc) {
    touched.insert(pr.first);
    touched.insert(pr.second);
  }
  std::map<int, int> relabel;
  for (int t : touched) relabel[t] = static_cast<int>(relabel.size());
  int v = static_cast<int>(touched.size());
  if (v > 255)
    throw std::invalid_argument("multigraph too large to canonicalize");

  Multigraph g;
  g.vertex_count_ = v;
  if (v == 0) {
    g.form_ = {0};
    return g;
  }

  MultMatrix mult(v, std::vector<std::int64_t>(v, 0));
  for (const auto& [pr, m] : acc) {
    int a = relabel[pr.first], b = relabel[pr.second];
    mult[a][b] = m;
    mult[b][a] = m;
  }
  std::vector<std::int64_t> flat = canonical_flat(mult);

  g.form_.push_back(static_cast<unsigned char>(v));
  for (std::int64_t m : flat) append_mult_byte(g.form_, m);
  for (int j = 1; j < v; ++j)
    for (int i = 0; i < j; ++i) {
      std::int64_t m = flat[column_offset(j) + i];
      if (m > 0) g.edges_.push_back({i, j, m});
    }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  return g;
}

std::int64_t Multigraph::edge_count() const {
  std::int64_t total = 0;
  for (const auto& e : edges_) total += e.mult;
  return total;
}

bool Multigraph::is_simple() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.mult == 1; });
}

std::int64_t Multigraph::multiplicity(int u, int v) const {
  if (u > v) std::swap(u, v);
  for (const auto& e : edges_)
    if (e.u == u && e.v == v) return e.mult;
  return 0;
}

std::string Multigraph::canonical_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(form_.size() * 2);
  for (unsigned char b : form_) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

std::strong_ordering Multigraph::operator<=>(const Multigraph& o) const {
  if (auto c = edge_count() <=> o.edge_count(); c != 0) return c;
  if (auto c = vertex_count_ <=> o.vertex_count_; c != 0) return c;
  return form_ <=> o.form_;
}

std::int64_t automorphism_count(const Multigraph& h) {
  if (h.vertex_count() == 0) return 1;
  MultMatrix mult = mult_matrix(h);
  // Stored labels are canonical, so the identity labeling realizes the
  // canonical flat vector; automorphisms are exactly the labelings that
  // reproduce it.
  int v = h.vertex_count();
  std::vector<std::int64_t> flat(column_offset(v));
  for (int j = 1; j < v; ++j)
    for (int i = 0; i < j; ++i) flat[column_offset(j) + i] = mult[i][j];
  return count_matching_labelings(mult, flat);
}

std::vector<Multigraph> enumerate_multigraphs(
    int edge_count, std::optional<int> max_vertices) {
  if (edge_count < 0) throw std::invalid_argument("negative edge count");
  std::vector<Multigraph> out;
  if (edge_count == 0) {
    out.push_back(Multigraph::empty());
    return out;
  }
  int vmax = 2 * edge_count;
  if (max_vertices) vmax = std::min(vmax, *max_vertices);
  std::set<Multigraph> seen;
  for (int v = 2; v <= vmax; ++v) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j) pairs.emplace_back(i, j);
    int p = static_cast<int>(pairs.size());
    // Non-decreasing index sequences = multisets of size edge_count.
    std::vector<int> pick(edge_count, 0);
    while (true) {
      std::vector<bool> hit(v, false);
      for (int c : pick) {
        hit[pairs[c].first] = true;
        hit[pairs[c].second] = true;
      }
      if (std::find(hit.begin(), hit.end(), false) == hit.end()) {
        std::vector<Edge> edges;
        for (int c : pick) edges.push_back({pairs[c].first, pairs[c].second, 1});
        seen.insert(Multigraph::canonicalize(v, std::move(edges)));
      }
      int k = edge_count - 1;
      while (k >= 0 && pick[k] == p - 1) --k;
      if (k < 0) break;
      int nv = pick[k] + 1;
      for (int i = k; i < edge_count; ++i) pick[i] = nv;
    }
  }
  out.assign(seen.begin(), seen.end());
  return out;
}

std::vector<Multigraph> enumerate_multigraphs_up_to(int max_edges) {
  std::vector<Multigraph> out;
  for (int d = 0; d <= max_edges; ++d) {
    auto part = enumerate_multigraphs(d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<std::pair<VertexPartition, Multigraph>> loopless_quotients(
    const Multigraph& h) {
  std::vector<std::pair<VertexPartition, Multigraph>> out;
  int v = h.vertex_count();
  if (v == 0) {
    out.push_back({VertexPartition{}, Multigraph::empty()});
    return out;
  }
  // Restricted-growth strings enumerate set partitions; block k is the set
  // of positions labeled k, indexed by first appearance.
  std::vector<int> rgs(v, 0);
  auto rec = [&](auto&& self, int pos, int maxlabel) -> void {
    if (pos == v) {
      for (const auto& e : h.edges())
        if (rgs[e.u] == rgs[e.v]) return;  // merging adjacent pair -> loop
      int blocks = maxlabel + 1;
      VertexPartition part;
      part.blocks.assign(blocks, {});
      for (int i = 0; i < v; ++i) part.blocks[rgs[i]].push_back(i);
      std::vector<Edge> qedges;
      for (const auto& e : h.edges())
        qedges.push_back({rgs[e.u], rgs[e.v], e.mult});
      out.push_back(
          {std::move(part), Multigraph::canonicalize(blocks, std::move(qedges))});
      return;
    }
    for (int lab = 0; lab <= maxlabel + 1; ++lab) {
      rgs[pos] = lab;
      self(self, pos + 1, std::max(maxlabel, lab));
    }
  };
  rgs[0] = 0;
  rec(rec, 1, 0);
  return out;
}

Multigraph collapse_simple(const Multigraph& h) {
  std::vector<Edge> edges;
  for (const auto& e : h.edges()) edges.push_back({e.u, e.v, 1});
  return Multigraph::canonicalize(h.vertex_count(), std::move(edges));
}

Multigraph disjoint_union(const Multigraph& a, const Multigraph& b) {
  std::vector<Edge> edges = a.edges();
  int shift = a.vertex_count();
  for (const auto& e : b.edges())
    edges.push_back({e.u + shift, e.v + shift, e.mult});
  return Multigraph::canonicalize(shift + b.vertex_count(), std::move(edges));
}

namespace {

// Next content line, '#' comments and blank lines skipped.
bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

Multigraph parse_multigraph(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno))
    throw std::runtime_error("multigraph: missing header line");
  std::istringstream hs(line);
  long long v = -1, e = -1;
  if (!(hs >> v >> e) || v < 0 || e < 0)
    throw std::runtime_error("multigraph: bad header at line " +
                             std::to_string(lineno));
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> pairs;
  for (long long k = 0; k < e; ++k) {
    if (!next_line(in, line, lineno))
      throw std::runtime_error("multigraph: expected " + std::to_string(e) +
                               " edge lines, got " + std::to_string(k));
    std::istringstream es(line);
    long long u1 = 0, v1 = 0, m = 0;
    if (!(es >> u1 >> v1 >> m))
      throw std::runtime_error("multigraph: bad edge at line " +
                               std::to_string(lineno));
    if (u1 < 1 || u1 > v || v1 < 1 || v1 > v)
      throw std::runtime_error("multigraph: endpoint out of range at line " +
                               std::to_string(lineno));
    if (u1 == v1)
      throw std::runtime_error("multigraph: self-loop " + std::to_string(u1) +
                               " " + std::to_string(v1) + " at line " +
                               std::to_string(lineno));
    if (m < 1)
      throw std::runtime_error("multigraph: multiplicity < 1 at line " +
                               std::to_string(lineno));
    int lo = static_cast<int>(std::min(u1, v1));
    int hi = static_cast<int>(std::max(u1, v1));
    if (!pairs.insert({lo, hi}).second)
      throw std::runtime_error("multigraph: duplicate edge at line " +
                               std::to_string(lineno));
    edges.push_back(
        {static_cast<int>(u1) - 1, static_cast<int>(v1) - 1, m});
  }
  return Multigraph::canonicalize(static_cast<int>(v), std::move(edges));
}

Multigraph parse_multigraph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_multigraph(in);
}

std::string to_text(const Multigraph& h) {
  std::ostringstream out;
  out << h.vertex_count() << " " << h.distinct_edge_count() << "\n";
  for (const auto& e : h.edges())
    out << e.u + 1 << " " << e.v + 1 << " " << e.mult << "\n";
  return out.str();
}

}  // namespace graphon
