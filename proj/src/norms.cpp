#include "graphon/norms.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "graphon/homdensity.hpp"
#include "json.hpp"

namespace graphon {

CutNormResult cut_norm_exact(const WeightedMatrix& a, int size_limit) {
  int n = a.size();
  if (n > size_limit)
    throw std::invalid_argument(
        "cut_norm_exact: size " + std::to_string(n) +
        " exceeds the exhaustive-scan limit " + std::to_string(size_limit));

  CutNormResult best{Rat(0), {}, {}};
  Rat norm = rat_pow(Rat(1, n), 2);

  std::vector<Rat> colsum(n, Rat(0));
  std::vector<int> members;
  // Gray-code walk over S keeps the column sums incremental.
  std::uint64_t prev = 0;
  for (std::uint64_t rank = 0; rank < (std::uint64_t{1} << n); ++rank) {
    std::uint64_t gray = rank ^ (rank >> 1);
    std::uint64_t delta = gray ^ prev;
    if (delta) {
      int i = std::countr_zero(delta);
      if (gray & delta)
        for (int j = 0; j < n; ++j) colsum[j] += a.at(i, j);
      else
        for (int j = 0; j < n; ++j) colsum[j] -= a.at(i, j);
    }
    prev = gray;

    Rat pos(0), neg(0);
    for (int j = 0; j < n; ++j) {
      if (colsum[j] > 0) pos += colsum[j];
      if (colsum[j] < 0) neg -= colsum[j];
    }
    for (int side = 0; side < 2; ++side) {
      const Rat& val = side == 0 ? pos : neg;
      if (val < best.value) continue;
      std::vector<int> s, tset;
      for (int i = 0; i < n; ++i)
        if (gray >> i & 1) s.push_back(i);
      for (int j = 0; j < n; ++j)
        if (side == 0 ? colsum[j] > 0 : colsum[j] < 0) tset.push_back(j);
      if (val > best.value ||
          std::pair(s, tset) < std::pair(best.witness_s, best.witness_t)) {
        best.value = val;
        best.witness_s = std::move(s);
        best.witness_t = std::move(tset);
      }
    }
  }
  best.value *= norm;
  return best;
}

L1Result l1_distance(const WeightedMatrix& a, const WeightedMatrix& b) {
  int na = a.size(), nb = b.size();
  int m = static_cast<int>(std::lcm(na, nb));
  int coarse = std::min(na, nb);
  int ka = m / na, kb = m / nb, kc = m / coarse;
  Rat cell = rat_pow(Rat(1, m), 2);
  L1Result out{Rat(0), Rat(0)};
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      Rat diff = a.at(p / ka, q / ka) - b.at(p / kb, q / kb);
      if (diff < 0) diff = -diff;
      if (diff == 0) continue;
      out.total += diff * cell;
      if (p / kc != q / kc) out.off_diagonal_blocks += diff * cell;
    }
  return out;
}

namespace {

// Unnormalized cut norm of a difference matrix, aborting with nullopt as
// soon as the running maximum reaches the cutoff (it can then no longer
// improve the minimum over permutations).
std::optional<Rat> cut_norm_below(const std::vector<std::vector<Rat>>& d,
                                  const std::optional<Rat>& cutoff) {
  int n = static_cast<int>(d.size());
  Rat best(0);
  std::vector<Rat> colsum(n, Rat(0));
  std::uint64_t prev = 0;
  for (std::uint64_t rank = 0; rank < (std::uint64_t{1} << n); ++rank) {
    std::uint64_t gray = rank ^ (rank >> 1);
    std::uint64_t delta = gray ^ prev;
    if (delta) {
      int i = std::countr_zero(delta);
      if (gray & delta)
        for (int j = 0; j < n; ++j) colsum[j] += d[i][j];
      else
        for (int j = 0; j < n; ++j) colsum[j] -= d[i][j];
    }
    prev = gray;
    Rat pos(0), neg(0);
    for (int j = 0; j < n; ++j) {
      if (colsum[j] > 0) pos += colsum[j];
      if (colsum[j] < 0) neg -= colsum[j];
    }
    if (pos > best) best = pos;
    if (neg > best) best = neg;
    if (cutoff && best >= *cutoff) return std::nullopt;
  }
  return best;
}

}  // namespace

Rat cut_distance_perm(const WeightedMatrix& a, const WeightedMatrix& b,
                      int size_limit) {
  if (a.size() != b.size())
    throw std::invalid_argument("cut_distance_perm: size mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  int n = a.size();
  if (n > size_limit)
    throw std::invalid_argument("cut_distance_perm: size " +
                                std::to_string(n) + " exceeds the limit " +
                                std::to_string(size_limit));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Rat> best;
  std::vector<std::vector<Rat>> diff(n, std::vector<Rat>(n, Rat(0)));
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        diff[perm[i]][perm[j]] = a.at(perm[i], perm[j]) - b.at(i, j);
    std::optional<Rat> v = cut_norm_below(diff, best);
    if (v && (!best || *v < *best)) best = std::move(v);
    if (best && *best == 0) break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best * rat_pow(Rat(1, n), 2);
}

bool simplify_identity_check(const Multigraph& h, const WeightedMatrix& a) {
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (a.at(i, j) != 0 && a.at(i, j) != 1)
        throw std::invalid_argument(
            "simplify_identity_check: entry (" + std::to_string(i) + "," +
            std::to_string(j) + ") is not 0/1-valued");
  return t(h, a) == t(collapse_simple(h), a);
}

std::string to_text(const CutNormResult& r) {
  nlohmann::ordered_json j;
  j["value"] = rat_to_string(r.value);
  nlohmann::ordered_json s = nlohmann::ordered_json::array();
  for (int i : r.witness_s) s.push_back(i + 1);
  nlohmann::ordered_json t = nlohmann::ordered_json::array();
  for (int i : r.witness_t) t.push_back(i + 1);
  j["S"] = std::move(s);
  j["T"] = std::move(t);
  return j.dump(2) + "\n";
}

}  // namespace graphon
