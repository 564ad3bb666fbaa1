#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphon/homdensity.hpp"
#include "graphon/multigraph.hpp"
#include "graphon/rational.hpp"
#include "graphon/weighted_graph.hpp"

namespace graphon {

struct VarPower {
  int i = 0;  // 0 <= i < j < ambient_n
  int j = 0;
  std::int64_t power = 1;
  auto operator<=>(const VarPower&) const = default;
};

// Sorted by (i, j), pairs distinct, powers >= 1.
using Monomial = std::vector<VarPower>;

// Exact-rational polynomial in the edge variables a_{ij} of an n-vertex
// weighted graph. Zero coefficients are dropped.
class EdgePolynomial {
 public:
  explicit EdgePolynomial(int ambient_n);
  static EdgePolynomial constant(int ambient_n, Rat c);
  static EdgePolynomial variable(int ambient_n, int i, int j);

  int ambient_n() const { return ambient_n_; }
  const std::map<Monomial, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Max total power over terms; -1 for the zero polynomial.
  std::int64_t degree() const;
  bool is_homogeneous(std::int64_t degree) const;

  // Validates the monomial, merges with an existing term, drops zeros.
  void add_term(Monomial m, const Rat& coeff);

  EdgePolynomial& operator+=(const EdgePolynomial& o);
  EdgePolynomial& operator-=(const EdgePolynomial& o);
  EdgePolynomial operator+(const EdgePolynomial& o) const;
  EdgePolynomial operator-(const EdgePolynomial& o) const;
  EdgePolynomial operator*(const EdgePolynomial& o) const;
  EdgePolynomial scaled(const Rat& c) const;
  bool operator==(const EdgePolynomial& o) const = default;

  // Homogeneous components keyed by degree (zero polynomial -> empty map).
  std::map<std::int64_t, EdgePolynomial> homogeneous_components() const;

 private:
  int ambient_n_;
  std::map<Monomial, Rat> terms_;
};

Rat evaluate(const EdgePolynomial& f, const WeightedMatrix& a);

// The S_n-orbit of a monomial is determined by the multigraph its edge
// multiset spans (isolated ambient vertices dropped).
Multigraph monomial_class(const Monomial& m, int ambient_n);

// Number of distinct monomials in the orbit of a monomial of class h:
// n(n-1)...(n-|V(h)|+1) / |Aut(h)|.
std::int64_t orbit_size(const Multigraph& h, int ambient_n);

struct ClassViolation {
  Multigraph orbit;
  std::string detail;
};

// Nullopt iff coefficients are constant on S_n-orbits of monomials.
std::optional<ClassViolation> find_class_violation(const EdgePolynomial& f);
bool is_class_function(const EdgePolynomial& f);

// Orbit-averaging projection (1/n!) sum over sigma of F o sigma; fixes
// class functions pointwise.
EdgePolynomial symmetrize(const EdgePolynomial& f);

// Explicit expansion of t(H,.) or t_inj(H,.) on matrices of size n.
EdgePolynomial density_polynomial(const Multigraph& h, DensityBasis kind,
                                  int ambient_n);

// Writes a homogeneous degree-d class function in the injective basis:
// F = sum over H in H_d^(n) of c_H t_inj(H,-), with
// c_H = (orbit representative coefficient) * n^{|V(H)|} / |Aut(H)|.
DensityCoefficients decompose_tinj(const EdgePolynomial& f,
                                   std::int64_t degree);

// Injective-basis coefficients of a possibly mixed-degree class function,
// decomposed one homogeneous component at a time.
DensityCoefficients decompose_tinj_mixed(const EdgePolynomial& f);

// Converts injective-basis coefficients over H_{<=N} to the t basis via
// the triangular transform.
DensityCoefficients tinj_to_t(const DensityCoefficients& c, int max_edges);

// Writes a class function of degree <= N uniquely as sum of c_H t(H,-)
// over H_{<=N}. Requires ambient_n >= 2N (the uniqueness regime).
DensityCoefficients decompose_t(const EdgePolynomial& f, int max_edges);

// Rank of the evaluation matrix [t(H_i, a_k)] over seeded random matrices
// a_k in M_{n,[0,1]}, by exact Gaussian elimination. Full rank certifies
// linear independence; a deficient value is only a lower bound.
int independence_rank(const std::vector<Multigraph>& basis, int n,
                      int sample_count, std::uint64_t seed);

// JSON object {"n": int, "terms": [{"monomial": [[i,j,power],...],
// "coeff": rational string}, ...]} with 1-based vertex indices.
EdgePolynomial parse_polynomial(std::istream& in);
EdgePolynomial parse_polynomial_text(const std::string& text);
std::string to_text(const EdgePolynomial& f);

}  // namespace graphon
