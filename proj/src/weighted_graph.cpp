#include "graphon/weighted_graph.hpp"

#include <algorithm>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace graphon {

WeightedMatrix WeightedMatrix::make(std::vector<std::vector<Rat>> entries) {
  int n = static_cast<int>(entries.size());
  if (n < 1) throw std::invalid_argument("matrix must have size >= 1");
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(entries[i].size()) != n)
      throw std::invalid_argument("matrix row " + std::to_string(i) +
                                  " has wrong length");
  for (int i = 0; i < n; ++i)
    if (entries[i][i] != 0)
      throw std::invalid_argument("nonzero diagonal entry at index " +
                                  std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (entries[i][j] != entries[j][i])
        throw std::invalid_argument("asymmetric entry pair (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ")");
  WeightedMatrix m;
  m.in_unit_range_ = true;
  for (int i = 0; i < n && m.in_unit_range_; ++i)
    for (int j = 0; j < n; ++j)
      if (entries[i][j] < 0 || entries[i][j] > 1) {
        m.in_unit_range_ = false;
        break;
      }
  m.entries_ = std::move(entries);
  return m;
}

WeightedMatrix WeightedMatrix::zero(int n) {
  return make(std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
}

Rat step_graphon_eval(const WeightedMatrix& a, const Rat& x, const Rat& y) {
  if (x < 0 || x > 1 || y < 0 || y > 1)
    throw std::domain_error("step_graphon_eval: point outside [0,1]^2");
  if (x == 0 || y == 0) return Rat(0);
  long i = rat_ceil(Rat(a.size()) * x);
  long j = rat_ceil(Rat(a.size()) * y);
  return a.at(static_cast<int>(i) - 1, static_cast<int>(j) - 1);
}

WeightedMatrix blow_up(const WeightedMatrix& a, int k) {
  if (k < 1) throw std::invalid_argument("blow-up factor must be >= 1");
  int n = a.size();
  int m = n * k;
  std::vector<std::vector<Rat>> b(m, std::vector<Rat>(m, Rat(0)));
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      if (p != q) b[p][q] = a.at(p / k, q / k);
  return WeightedMatrix::make(std::move(b));
}

bool check_admissible(const WeightedMatrix& a, const DirectionMatrix& g) {
  if (!a.in_unit_range())
    throw std::invalid_argument("check_admissible: base matrix not [0,1]-valued");
  if (g.size() != a.size())
    throw std::invalid_argument("check_admissible: size mismatch");
  int n = a.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (a.at(i, j) == 0 && g.at(i, j) < 0) return false;
      if (a.at(i, j) == 1 && g.at(i, j) > 0) return false;
    }
  return true;
}

WeightedMatrix permute(const WeightedMatrix& a, const std::vector<int>& perm) {
  int n = a.size();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation has wrong length");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p])
      throw std::invalid_argument("not a permutation of [n]");
    seen[p] = true;
  }
  std::vector<std::vector<Rat>> b(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[perm[i]][perm[j]] = a.at(i, j);
  return WeightedMatrix::make(std::move(b));
}

namespace {

// Drawing via modulo keeps output identical across standard libraries;
// std::uniform_int_distribution is implementation-defined.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

}  // namespace

WeightedMatrix random_matrix(int n, std::uint64_t seed, ValueMode mode) {
  if (n < 1) throw std::invalid_argument("matrix size must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Rat>> e(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rat val = mode == ValueMode::ZeroOne
                    ? Rat(static_cast<long>(draw(rng, 2)))
                    : make_rat(static_cast<long>(draw(rng, 9)), 8);
      e[i][j] = val;
      e[j][i] = val;
    }
  return WeightedMatrix::make(std::move(e));
}

DirectionMatrix random_direction(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("matrix size must be >= 1");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<std::vector<Rat>> e(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rat val = make_rat(static_cast<long>(draw(rng, 17)) - 8, 8);
      e[i][j] = val;
      e[j][i] = val;
    }
  return WeightedMatrix::make(std::move(e));
}

DirectionMatrix make_admissible(const WeightedMatrix& a,
                                const DirectionMatrix& g) {
  if (!a.in_unit_range())
    throw std::invalid_argument("make_admissible: base matrix not [0,1]-valued");
  if (g.size() != a.size())
    throw std::invalid_argument("make_admissible: size mismatch");
  int n = a.size();
  std::vector<std::vector<Rat>> e = g.entries();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a.at(i, j) == 0 && e[i][j] < 0) e[i][j] = -e[i][j];
      if (a.at(i, j) == 1 && e[i][j] > 0) e[i][j] = -e[i][j];
    }
  return WeightedMatrix::make(std::move(e));
}

WeightedMatrix linear_combination(
    const WeightedMatrix& a,
    const std::vector<std::pair<Rat, DirectionMatrix>>& terms) {
  int n = a.size();
  std::vector<std::vector<Rat>> e = a.entries();
  for (const auto& [coeff, g] : terms) {
    if (g.size() != n)
      throw std::invalid_argument("linear_combination: size mismatch");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) e[i][j] += coeff * g.at(i, j);
  }
  return WeightedMatrix::make(std::move(e));
}

WeightedMatrix parse_matrix(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("matrix: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
    throw std::runtime_error("matrix: expected object with fields n, rows");
  int n = j.at("n").get<int>();
  const auto& rows = j.at("rows");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw std::runtime_error("matrix: rows must be an array of length n");
  std::vector<std::vector<Rat>> e;
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::runtime_error("matrix: each row must have length n");
    std::vector<Rat> r;
    for (const auto& cell : row) r.push_back(rat_from_string(cell.get<std::string>()));
    e.push_back(std::move(r));
  }
  return WeightedMatrix::make(std::move(e));
}

WeightedMatrix parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

std::string to_text(const WeightedMatrix& a) {
  nlohmann::ordered_json j;
  j["n"] = a.size();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < a.size(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int k = 0; k < a.size(); ++k) row.push_back(rat_to_string(a.at(i, k)));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace graphon
