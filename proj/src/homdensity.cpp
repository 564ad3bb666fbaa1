#include "graphon/homdensity.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace graphon {

namespace {

// Table over a sorted vertex scope, indexed little-endian base n.
struct Factor {
  std::vector<int> scope;
  std::vector<Rat> table;
};

std::size_t project_index(const std::vector<int>& scope,
                          const std::vector<int>& assignment, int n) {
  std::size_t idx = 0;
  for (auto it = scope.rbegin(); it != scope.rend(); ++it)
    idx = idx * n + assignment[*it];
  return idx;
}

}  // namespace

Rat t(const Multigraph& h, const WeightedMatrix& a) {
  int vcount = h.vertex_count();
  if (vcount == 0) return Rat(1);
  int n = a.size();

  std::vector<Factor> factors;
  for (const auto& e : h.edges()) {
    Factor f;
    f.scope = {e.u, e.v};
    f.table.reserve(static_cast<std::size_t>(n) * n);
    for (int xv = 0; xv < n; ++xv)
      for (int xu = 0; xu < n; ++xu)
        f.table.push_back(rat_pow(a.at(xu, xv), e.mult));
    factors.push_back(std::move(f));
  }

  std::set<int> remaining;
  for (int i = 0; i < vcount; ++i) remaining.insert(i);

  while (!remaining.empty()) {
    // Min-degree greedy elimination, ties broken by vertex index.
    int pick = -1, pick_deg = -1;
    for (int r : remaining) {
      std::set<int> nbrs;
      for (const auto& f : factors)
        if (std::find(f.scope.begin(), f.scope.end(), r) != f.scope.end())
          nbrs.insert(f.scope.begin(), f.scope.end());
      nbrs.erase(r);
      int deg = static_cast<int>(nbrs.size());
      if (pick == -1 || deg < pick_deg) {
        pick = r;
        pick_deg = deg;
      }
    }

    std::vector<Factor> gathered, kept;
    for (auto& f : factors) {
      if (std::find(f.scope.begin(), f.scope.end(), pick) != f.scope.end())
        gathered.push_back(std::move(f));
      else
        kept.push_back(std::move(f));
    }
    std::set<int> uset;
    for (const auto& f : gathered) uset.insert(f.scope.begin(), f.scope.end());
    std::vector<int> full(uset.begin(), uset.end());
    std::vector<int> out_scope;
    for (int x : full)
      if (x != pick) out_scope.push_back(x);

    Factor merged;
    merged.scope = out_scope;
    std::size_t out_size = 1;
    for (std::size_t i = 0; i < out_scope.size(); ++i) out_size *= n;
    merged.table.assign(out_size, Rat(0));

    std::vector<int> assignment(vcount, 0);
    std::vector<int> odo(full.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < full.size(); ++i) assignment[full[i]] = odo[i];
      Rat prod(1);
      for (const auto& f : gathered) {
        prod *= f.table[project_index(f.scope, assignment, n)];
        if (prod == 0) break;
      }
      if (prod != 0)
        merged.table[project_index(out_scope, assignment, n)] += prod;
      std::size_t k = 0;
      while (k < odo.size() && ++odo[k] == n) odo[k++] = 0;
      if (k == odo.size()) break;
    }
    kept.push_back(std::move(merged));
    factors = std::move(kept);
    remaining.erase(pick);
  }

  Rat result(1);
  for (const auto& f : factors) result *= f.table[0];
  return result * rat_pow(Rat(1, n), vcount);
}

Rat t_reference(const Multigraph& h, const WeightedMatrix& a) {
  int vcount = h.vertex_count();
  if (vcount == 0) return Rat(1);
  int n = a.size();
  Rat sum(0);
  std::vector<int> tuple(vcount, 0);
  while (true) {
    Rat prod(1);
    for (const auto& e : h.edges()) {
      const Rat& w = a.at(tuple[e.u], tuple[e.v]);
      if (w == 0) {
        prod = 0;
        break;
      }
      prod *= rat_pow(w, e.mult);
    }
    sum += prod;
    int k = 0;
    while (k < vcount && ++tuple[k] == n) tuple[k++] = 0;
    if (k == vcount) break;
  }
  return sum * rat_pow(Rat(1, n), vcount);
}

Rat t_inj(const Multigraph& h, const WeightedMatrix& a) {
  int vcount = h.vertex_count();
  if (vcount == 0) return Rat(1);
  int n = a.size();
  if (vcount > n) return Rat(0);

  // Edges whose endpoints are both assigned once vertex pos is placed.
  std::vector<std::vector<Edge>> ready(vcount);
  for (const auto& e : h.edges()) ready[std::max(e.u, e.v)].push_back(e);

  std::vector<int> tuple(vcount, -1);
  std::vector<bool> used(n, false);
  Rat sum(0);
  auto rec = [&](auto&& self, int pos, const Rat& partial) -> void {
    if (pos == vcount) {
      sum += partial;
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (used[x]) continue;
      tuple[pos] = x;
      Rat prod = partial;
      for (const auto& e : ready[pos]) {
        prod *= rat_pow(a.at(tuple[e.u], tuple[e.v]), e.mult);
        if (prod == 0) break;
      }
      if (prod != 0) {
        used[x] = true;
        self(self, pos + 1, prod);
        used[x] = false;
      }
    }
    tuple[pos] = -1;
  };
  rec(rec, 0, Rat(1));
  return sum * rat_pow(Rat(1, n), vcount);
}

DensityCoefficients t_to_tinj(const Multigraph& h, int ambient_n) {
  if (ambient_n < 1) throw std::invalid_argument("ambient size must be >= 1");
  DensityCoefficients out;
  out.basis = DensityBasis::TInj;
  out.ambient_n = ambient_n;
  for (const auto& [part, quotient] : loopless_quotients(h)) {
    long drop = quotient.vertex_count() - h.vertex_count();
    out.set(quotient, out.get(quotient) + rat_pow(Rat(ambient_n), drop));
  }
  return out;
}

TransformMatrix transform_matrix(const std::vector<Multigraph>& basis,
                                 int ambient_n,
                                 TransformDirection direction) {
  int size = static_cast<int>(basis.size());
  std::map<Multigraph, int> index;
  for (int i = 0; i < size; ++i) {
    if (!index.emplace(basis[i], i).second)
      throw std::invalid_argument("transform_matrix: duplicate basis element");
  }
  if (direction == TransformDirection::TInjFromT) {
    for (const auto& h : basis)
      if (h.vertex_count() > ambient_n)
        throw std::invalid_argument(
            "transform_matrix: basis element with more than n vertices; "
            "t_inj vanishes identically there");
  }

  std::vector<std::vector<Rat>> m(size, std::vector<Rat>(size, Rat(0)));
  for (int row = 0; row < size; ++row) {
    DensityCoefficients expansion = t_to_tinj(basis[row], ambient_n);
    for (const auto& [q, coeff] : expansion.coeffs) {
      auto it = index.find(q);
      if (it == index.end())
        throw std::invalid_argument(
            "transform_matrix: basis not closed under loopless quotients "
            "(missing quotient of basis element " + std::to_string(row) + ")");
      if (it->second > row)
        throw std::invalid_argument(
            "transform_matrix: basis not sorted by vertex count; quotient "
            "appears after its source");
      m[row][it->second] = coeff;
    }
  }

  TransformMatrix out;
  out.basis = basis;
  out.ambient_n = ambient_n;
  out.direction = direction;
  if (direction == TransformDirection::TFromTInj) {
    out.entries = std::move(m);
    return out;
  }
  // Invert the unit lower-triangular matrix by forward substitution.
  std::vector<std::vector<Rat>> inv(size, std::vector<Rat>(size, Rat(0)));
  for (int i = 0; i < size; ++i) {
    inv[i][i] = 1;
    for (int j = 0; j < i; ++j) {
      Rat s(0);
      for (int k = j; k < i; ++k) s += m[i][k] * inv[k][j];
      inv[i][j] = -s;
    }
  }
  out.entries = std::move(inv);
  return out;
}

Rat graphon_density_consistency(const Multigraph& h, const WeightedMatrix& a) {
  int vcount = h.vertex_count();
  if (vcount == 0) return Rat(1);
  int n = a.size();
  // The step function is constant on open grid cells, so the integral is
  // the sum of midpoint values weighted by the cell measure 1/n per axis.
  Rat sum(0);
  std::vector<int> block(vcount, 0);
  while (true) {
    Rat prod(1);
    for (const auto& e : h.edges()) {
      Rat x = make_rat(2 * block[e.u] + 1, 2 * n);
      Rat y = make_rat(2 * block[e.v] + 1, 2 * n);
      Rat w = step_graphon_eval(a, x, y);
      if (w == 0) {
        prod = 0;
        break;
      }
      prod *= rat_pow(w, e.mult);
    }
    sum += prod;
    int k = 0;
    while (k < vcount && ++block[k] == n) block[k++] = 0;
    if (k == vcount) break;
  }
  return sum * rat_pow(Rat(1, n), vcount);
}

Rat evaluate_density_sum(const DensityCoefficients& c,
                         const WeightedMatrix& a) {
  Rat sum(0);
  for (const auto& [h, coeff] : c.coeffs) {
    Rat val = c.basis == DensityBasis::T ? t(h, a) : t_inj(h, a);
    sum += coeff * val;
  }
  return sum;
}

DensityCoefficients parse_density_coefficients(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("coefficients: invalid JSON: ") +
                             e.what());
  }
  if (!j.is_object() || !j.contains("basis") || !j.contains("n") ||
      !j.contains("coeffs"))
    throw std::runtime_error(
        "coefficients: expected object with fields basis, n, coeffs");
  DensityCoefficients out;
  std::string basis = j.at("basis").get<std::string>();
  if (basis == "t")
    out.basis = DensityBasis::T;
  else if (basis == "tinj")
    out.basis = DensityBasis::TInj;
  else
    throw std::runtime_error("coefficients: basis must be 't' or 'tinj'");
  out.ambient_n = j.at("n").get<int>();
  if (out.ambient_n < 1)
    throw std::runtime_error("coefficients: n must be >= 1");
  for (const auto& pair : j.at("coeffs")) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::runtime_error(
          "coefficients: each entry must be [multigraph, rational]");
    Multigraph h = parse_multigraph_text(pair[0].get<std::string>());
    Rat c = rat_from_string(pair[1].get<std::string>());
    out.set(h, out.get(h) + c);
  }
  return out;
}

DensityCoefficients parse_density_coefficients_text(const std::string& text) {
  std::istringstream in(text);
  return parse_density_coefficients(in);
}

std::string to_text(const DensityCoefficients& c) {
  nlohmann::ordered_json j;
  j["basis"] = c.basis == DensityBasis::T ? "t" : "tinj";
  j["n"] = c.ambient_n;
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (const auto& [h, coeff] : c.coeffs)
    coeffs.push_back({to_text(h), rat_to_string(coeff)});
  j["coeffs"] = std::move(coeffs);
  return j.dump(2) + "\n";
}

}  // namespace graphon
