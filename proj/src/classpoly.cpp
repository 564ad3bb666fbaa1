#include "graphon/classpoly.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace graphon {

EdgePolynomial::EdgePolynomial(int ambient_n) : ambient_n_(ambient_n) {
  if (ambient_n < 1)
    throw std::invalid_argument("polynomial ambient size must be >= 1");
}

EdgePolynomial EdgePolynomial::constant(int ambient_n, Rat c) {
  EdgePolynomial f(ambient_n);
  f.add_term({}, c);
  return f;
}

EdgePolynomial EdgePolynomial::variable(int ambient_n, int i, int j) {
  EdgePolynomial f(ambient_n);
  f.add_term({{i, j, 1}}, Rat(1));
  return f;
}

std::int64_t EdgePolynomial::degree() const {
  std::int64_t deg = -1;
  for (const auto& [m, c] : terms_) {
    std::int64_t d = 0;
    for (const auto& vp : m) d += vp.power;
    deg = std::max(deg, d);
  }
  return deg;
}

bool EdgePolynomial::is_homogeneous(std::int64_t degree) const {
  for (const auto& [m, c] : terms_) {
    std::int64_t d = 0;
    for (const auto& vp : m) d += vp.power;
    if (d != degree) return false;
  }
  return true;
}

void EdgePolynomial::add_term(Monomial m, const Rat& coeff) {
  for (std::size_t k = 0; k < m.size(); ++k) {
    const auto& vp = m[k];
    if (vp.i < 0 || vp.j >= ambient_n_ || vp.i >= vp.j)
      throw std::invalid_argument("monomial variable out of range");
    if (vp.power < 1)
      throw std::invalid_argument("monomial power must be >= 1");
    if (k > 0 && !(std::pair(m[k - 1].i, m[k - 1].j) < std::pair(vp.i, vp.j)))
      throw std::invalid_argument("monomial pairs must be sorted and distinct");
  }
  if (coeff == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

EdgePolynomial& EdgePolynomial::operator+=(const EdgePolynomial& o) {
  if (o.ambient_n_ != ambient_n_)
    throw std::invalid_argument("polynomial ambient size mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

EdgePolynomial& EdgePolynomial::operator-=(const EdgePolynomial& o) {
  if (o.ambient_n_ != ambient_n_)
    throw std::invalid_argument("polynomial ambient size mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

EdgePolynomial EdgePolynomial::operator+(const EdgePolynomial& o) const {
  EdgePolynomial r = *this;
  r += o;
  return r;
}

EdgePolynomial EdgePolynomial::operator-(const EdgePolynomial& o) const {
  EdgePolynomial r = *this;
  r -= o;
  return r;
}

EdgePolynomial EdgePolynomial::operator*(const EdgePolynomial& o) const {
  if (o.ambient_n_ != ambient_n_)
    throw std::invalid_argument("polynomial ambient size mismatch");
  EdgePolynomial r(ambient_n_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      std::map<std::pair<int, int>, std::int64_t> powers;
      for (const auto& vp : ma) powers[{vp.i, vp.j}] += vp.power;
      for (const auto& vp : mb) powers[{vp.i, vp.j}] += vp.power;
      Monomial m;
      for (const auto& [pr, pw] : powers) m.push_back({pr.first, pr.second, pw});
      r.add_term(std::move(m), ca * cb);
    }
  return r;
}

EdgePolynomial EdgePolynomial::scaled(const Rat& c) const {
  EdgePolynomial r(ambient_n_);
  if (c == 0) return r;
  for (const auto& [m, coeff] : terms_) r.add_term(m, coeff * c);
  return r;
}

std::map<std::int64_t, EdgePolynomial>
EdgePolynomial::homogeneous_components() const {
  std::map<std::int64_t, EdgePolynomial> out;
  for (const auto& [m, c] : terms_) {
    std::int64_t d = 0;
    for (const auto& vp : m) d += vp.power;
    auto it = out.find(d);
    if (it == out.end())
      it = out.emplace(d, EdgePolynomial(ambient_n_)).first;
    it->second.add_term(m, c);
  }
  return out;
}

Rat evaluate(const EdgePolynomial& f, const WeightedMatrix& a) {
  if (a.size() != f.ambient_n())
    throw std::invalid_argument("evaluate: matrix size " +
                                std::to_string(a.size()) +
                                " does not match polynomial ambient size " +
                                std::to_string(f.ambient_n()));
  Rat sum(0);
  for (const auto& [m, c] : f.terms()) {
    Rat prod = c;
    for (const auto& vp : m) {
      prod *= rat_pow(a.at(vp.i, vp.j), vp.power);
      if (prod == 0) break;
    }
    sum += prod;
  }
  return sum;
}

Multigraph monomial_class(const Monomial& m, int ambient_n) {
  std::vector<Edge> edges;
  for (const auto& vp : m) edges.push_back({vp.i, vp.j, vp.power});
  return Multigraph::canonicalize(ambient_n, std::move(edges));
}

std::int64_t orbit_size(const Multigraph& h, int ambient_n) {
  if (h.vertex_count() > ambient_n)
    throw std::invalid_argument("orbit_size: class has more vertices than n");
  std::int64_t falling = 1;
  for (int k = 0; k < h.vertex_count(); ++k) falling *= ambient_n - k;
  return falling / automorphism_count(h);
}

namespace {

// All monomials in the orbit of class h on [n]: images of the injective
// embeddings of V(h), deduplicated (each arises |Aut(h)| times).
std::set<Monomial> orbit_monomials(const Multigraph& h, int n) {
  std::set<Monomial> out;
  int v = h.vertex_count();
  std::vector<int> image(v, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == v) {
      std::map<std::pair<int, int>, std::int64_t> powers;
      for (const auto& e : h.edges()) {
        int a = image[e.u], b = image[e.v];
        powers[{std::min(a, b), std::max(a, b)}] += e.mult;
      }
      Monomial m;
      for (const auto& [pr, pw] : powers) m.push_back({pr.first, pr.second, pw});
      out.insert(std::move(m));
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (used[x]) continue;
      image[pos] = x;
      used[x] = true;
      self(self, pos + 1);
      used[x] = false;
    }
  };
  rec(rec, 0);
  return out;
}

struct OrbitGroup {
  Multigraph cls;
  std::vector<std::pair<Monomial, Rat>> members;
};

std::map<Multigraph, OrbitGroup> group_by_orbit(const EdgePolynomial& f) {
  std::map<Multigraph, OrbitGroup> groups;
  for (const auto& [m, c] : f.terms()) {
    Multigraph cls = monomial_class(m, f.ambient_n());
    auto it = groups.find(cls);
    if (it == groups.end()) it = groups.emplace(cls, OrbitGroup{cls, {}}).first;
    it->second.members.push_back({m, c});
  }
  return groups;
}

}  // namespace

std::optional<ClassViolation> find_class_violation(const EdgePolynomial& f) {
  for (const auto& [cls, group] : group_by_orbit(f)) {
    const Rat& first = group.members.front().second;
    for (const auto& [m, c] : group.members)
      if (c != first)
        return ClassViolation{
            cls, "coefficients " + rat_to_string(first) + " and " +
                     rat_to_string(c) + " differ within orbit " +
                     cls.canonical_hex()};
    std::int64_t full = orbit_size(cls, f.ambient_n());
    if (static_cast<std::int64_t>(group.members.size()) != full)
      return ClassViolation{
          cls, "orbit " + cls.canonical_hex() + " has " +
                   std::to_string(group.members.size()) + " of " +
                   std::to_string(full) + " monomials present"};
  }
  return std::nullopt;
}

bool is_class_function(const EdgePolynomial& f) {
  return !find_class_violation(f).has_value();
}

EdgePolynomial symmetrize(const EdgePolynomial& f) {
  EdgePolynomial out(f.ambient_n());
  for (const auto& [cls, group] : group_by_orbit(f)) {
    Rat total(0);
    for (const auto& [m, c] : group.members) total += c;
    Rat avg = total / Rat(static_cast<long>(orbit_size(cls, f.ambient_n())));
    if (avg == 0) continue;
    for (const auto& m : orbit_monomials(cls, f.ambient_n()))
      out.add_term(m, avg);
  }
  return out;
}

EdgePolynomial density_polynomial(const Multigraph& h, DensityBasis kind,
                                  int ambient_n) {
  EdgePolynomial out(ambient_n);
  int vcount = h.vertex_count();
  int n = ambient_n;
  Rat weight = rat_pow(Rat(1, n), vcount);
  if (vcount == 0) {
    out.add_term({}, Rat(1));
    return out;
  }
  if (kind == DensityBasis::TInj && vcount > n) return out;  // zero

  std::vector<int> tuple(vcount, 0);
  std::vector<bool> used(n, false);
  auto emit = [&]() {
    std::map<std::pair<int, int>, std::int64_t> powers;
    for (const auto& e : h.edges()) {
      int a = tuple[e.u], b = tuple[e.v];
      if (a == b) return;  // a_{vv} = 0 kills the monomial
      powers[{std::min(a, b), std::max(a, b)}] += e.mult;
    }
    Monomial m;
    for (const auto& [pr, pw] : powers) m.push_back({pr.first, pr.second, pw});
    out.add_term(std::move(m), weight);
  };
  if (kind == DensityBasis::T) {
    while (true) {
      emit();
      int k = 0;
      while (k < vcount && ++tuple[k] == n) tuple[k++] = 0;
      if (k == vcount) break;
    }
  } else {
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == vcount) {
        emit();
        return;
      }
      for (int x = 0; x < n; ++x) {
        if (used[x]) continue;
        tuple[pos] = x;
        used[x] = true;
        self(self, pos + 1);
        used[x] = false;
      }
    };
    rec(rec, 0);
  }
  return out;
}

DensityCoefficients decompose_tinj(const EdgePolynomial& f,
                                   std::int64_t degree) {
  if (auto viol = find_class_violation(f))
    throw std::invalid_argument("decompose_tinj: not a class function: " +
                                viol->detail);
  if (!f.is_homogeneous(degree))
    throw std::invalid_argument(
        "decompose_tinj: polynomial is not homogeneous of degree " +
        std::to_string(degree));
  DensityCoefficients out;
  out.basis = DensityBasis::TInj;
  out.ambient_n = f.ambient_n();
  for (const auto& [cls, group] : group_by_orbit(f)) {
    // Representative: least monomial in the orbit; all carry equal
    // coefficients once the class check passed.
    const Rat& rep = group.members.front().second;
    Rat coeff = rep * rat_pow(Rat(f.ambient_n()), cls.vertex_count()) /
                Rat(static_cast<long>(automorphism_count(cls)));
    out.set(cls, coeff);
  }
  return out;
}

DensityCoefficients decompose_tinj_mixed(const EdgePolynomial& f) {
  if (auto viol = find_class_violation(f))
    throw std::invalid_argument("decompose_tinj: not a class function: " +
                                viol->detail);
  DensityCoefficients out;
  out.basis = DensityBasis::TInj;
  out.ambient_n = f.ambient_n();
  for (const auto& [d, part] : f.homogeneous_components()) {
    DensityCoefficients piece = decompose_tinj(part, d);
    for (const auto& [h, c] : piece.coeffs) out.set(h, out.get(h) + c);
  }
  return out;
}

DensityCoefficients tinj_to_t(const DensityCoefficients& c, int max_edges) {
  if (c.basis != DensityBasis::TInj)
    throw std::invalid_argument("tinj_to_t: input must be in the tinj basis");
  std::vector<Multigraph> basis = enumerate_multigraphs_up_to(max_edges);
  TransformMatrix m =
      transform_matrix(basis, c.ambient_n, TransformDirection::TFromTInj);
  int size = static_cast<int>(basis.size());
  std::vector<Rat> lambda(size, Rat(0));
  for (const auto& [h, coeff] : c.coeffs) {
    auto it = std::find(basis.begin(), basis.end(), h);
    if (it == basis.end())
      throw std::invalid_argument(
          "tinj_to_t: coefficient on a multigraph with more than " +
          std::to_string(max_edges) + " edges");
    lambda[it - basis.begin()] = coeff;
  }
  // F = lambda . t_inj = lambda . M^{-1} t, so solve M^T c = lambda; M^T
  // is unit upper triangular.
  std::vector<Rat> cvec(size, Rat(0));
  for (int i = size - 1; i >= 0; --i) {
    Rat s = lambda[i];
    for (int j = i + 1; j < size; ++j) s -= m.entries[j][i] * cvec[j];
    cvec[i] = s;
  }
  DensityCoefficients out;
  out.basis = DensityBasis::T;
  out.ambient_n = c.ambient_n;
  for (int i = 0; i < size; ++i) out.set(basis[i], cvec[i]);
  return out;
}

DensityCoefficients decompose_t(const EdgePolynomial& f, int max_edges) {
  if (max_edges < 0) throw std::invalid_argument("decompose_t: N must be >= 0");
  if (f.ambient_n() < 2 * max_edges)
    throw std::invalid_argument(
        "decompose_t: requires n >= 2N for unique coefficients (got n=" +
        std::to_string(f.ambient_n()) + ", N=" + std::to_string(max_edges) +
        ")");
  if (f.degree() > max_edges)
    throw std::invalid_argument("decompose_t: polynomial degree " +
                                std::to_string(f.degree()) + " exceeds N=" +
                                std::to_string(max_edges));
  return tinj_to_t(decompose_tinj_mixed(f), max_edges);
}

namespace {

int rational_rank(std::vector<std::vector<Rat>> m) {
  if (m.empty()) return 0;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      Rat factor = m[r][col] / m[rank][col];
      for (int cc = col; cc < cols; ++cc) m[r][cc] -= factor * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int independence_rank(const std::vector<Multigraph>& basis, int n,
                      int sample_count, std::uint64_t seed) {
  if (sample_count < static_cast<int>(basis.size()))
    throw std::invalid_argument(
        "independence_rank: need at least |basis| samples");
  std::vector<std::vector<Rat>> m(basis.size());
  for (int k = 0; k < sample_count; ++k) {
    std::uint64_t sk = seed * 6364136223846793005ull +
                       static_cast<std::uint64_t>(k) * 1442695040888963407ull;
    WeightedMatrix a = random_matrix(n, sk, ValueMode::RationalGrid);
    for (std::size_t i = 0; i < basis.size(); ++i)
      m[i].push_back(t(basis[i], a));
  }
  return rational_rank(std::move(m));
}

EdgePolynomial parse_polynomial(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("polynomial: invalid JSON: ") +
                             e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
    throw std::runtime_error(
        "polynomial: expected object with fields n, terms");
  int n = j.at("n").get<int>();
  EdgePolynomial f(n);
  for (const auto& term : j.at("terms")) {
    if (!term.is_object() || !term.contains("monomial") ||
        !term.contains("coeff"))
      throw std::runtime_error(
          "polynomial: each term needs fields monomial, coeff");
    std::map<std::pair<int, int>, std::int64_t> powers;
    for (const auto& trip : term.at("monomial")) {
      if (!trip.is_array() || trip.size() != 3)
        throw std::runtime_error(
            "polynomial: monomial entries must be [i, j, power] triples");
      int i = trip[0].get<int>(), jj = trip[1].get<int>();
      std::int64_t p = trip[2].get<std::int64_t>();
      if (i < 1 || jj < 1 || i > n || jj > n || i == jj)
        throw std::runtime_error("polynomial: bad variable pair (" +
                                 std::to_string(i) + "," +
                                 std::to_string(jj) + ")");
      powers[{std::min(i, jj) - 1, std::max(i, jj) - 1}] += p;
    }
    Monomial m;
    for (const auto& [pr, pw] : powers) m.push_back({pr.first, pr.second, pw});
    f.add_term(std::move(m), rat_from_string(term.at("coeff").get<std::string>()));
  }
  return f;
}

EdgePolynomial parse_polynomial_text(const std::string& text) {
  std::istringstream in(text);
  return parse_polynomial(in);
}

std::string to_text(const EdgePolynomial& f) {
  nlohmann::ordered_json j;
  j["n"] = f.ambient_n();
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [m, c] : f.terms()) {
    nlohmann::ordered_json mono = nlohmann::ordered_json::array();
    for (const auto& vp : m)
      mono.push_back({vp.i + 1, vp.j + 1, vp.power});
    nlohmann::ordered_json term;
    term["monomial"] = std::move(mono);
    term["coeff"] = rat_to_string(c);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j.dump(2) + "\n";
}

}  // namespace graphon
