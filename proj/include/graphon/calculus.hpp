#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "graphon/classpoly.hpp"
#include "graphon/multigraph.hpp"
#include "graphon/rational.hpp"
#include "graphon/weighted_graph.hpp"

namespace graphon {

// Base point plus an ordered list of directions; the derivative order is
// the number of directions.
struct DerivativeRequest {
  WeightedMatrix base;
  std::vector<DirectionMatrix> directions;

  DerivativeRequest(WeightedMatrix base_point,
                    std::vector<DirectionMatrix> dirs)
      : base(std::move(base_point)), directions(std::move(dirs)) {}

  int order() const { return static_cast<int>(directions.size()); }
};

// Indices of directions failing check_admissible at the base point.
std::vector<int> inadmissible_directions(const DerivativeRequest& req);

struct GateauxResult {
  Rat value;
  std::vector<int> inadmissible;  // reported, not fatal: the polynomial
                                  // derivative exists regardless
};

// Mixed Gateaux derivative d^k F(a; g_1..g_k) of a polynomial, computed
// exactly: substitute a + sum lambda_l g_l and read off the coefficient
// of lambda_1 ... lambda_k.
GateauxResult gateaux_exact(const EdgePolynomial& f,
                            const DerivativeRequest& req);

struct FdEstimate {
  double value = 0;
  double step = 0;
  bool forward = false;  // central differences fell back to forward
                         // because an evaluation point left [0,1]
};

// Iterated finite-difference estimate of the mixed derivative of a black
// box. Central differences at interior points; forward differences when a
// central evaluation point would leave [0,1]. Rejects steps for which even
// the forward stencil escapes.
FdEstimate gateaux_fd(const std::function<double(const WeightedMatrix&)>& f,
                      const DerivativeRequest& req, double step = 1e-3);

// k-fold forward iterated difference with a rational step, evaluated in
// exact arithmetic. Annihilates polynomials of degree < k identically.
Rat iterated_difference_exact(const EdgePolynomial& f,
                              const WeightedMatrix& base,
                              const std::vector<DirectionMatrix>& directions,
                              const Rat& step);

// Polynomial in lambda_1..lambda_k with rational coefficients, keyed by
// exponent vector.
struct LambdaPolynomial {
  int variable_count = 0;
  std::map<std::vector<int>, Rat> terms;

  Rat coefficient(const std::vector<int>& exponents) const;
  std::int64_t total_degree() const;  // -1 for the zero polynomial
};

// The exact polynomial lambda -> t(H, a + sum lambda_l g_l); total degree
// at most |E(H)|.
LambdaPolynomial lambda_expansion(const Multigraph& h,
                                  const WeightedMatrix& a,
                                  const std::vector<DirectionMatrix>& dirs);

// True iff every order-k mixed derivative of F vanishes identically,
// decided symbolically (degree < k) with a seeded exact spot-check.
bool verify_vanishing(const EdgePolynomial& f, int order);

}  // namespace graphon
