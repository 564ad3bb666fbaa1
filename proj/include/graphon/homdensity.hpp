#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "graphon/multigraph.hpp"
#include "graphon/rational.hpp"
#include "graphon/weighted_graph.hpp"

namespace graphon {

enum class DensityBasis { T, TInj };

// Finite rational linear combination of density functions t(H,.) or
// t_inj(H,.) on matrices of a fixed ambient size. Zero coefficients are
// dropped; keys are canonical.
struct DensityCoefficients {
  DensityBasis basis = DensityBasis::T;
  int ambient_n = 1;
  std::map<Multigraph, Rat> coeffs;

  void set(const Multigraph& h, Rat c) {
    if (c == 0)
      coeffs.erase(h);
    else
      coeffs[h] = std::move(c);
  }
  Rat get(const Multigraph& h) const {
    auto it = coeffs.find(h);
    return it == coeffs.end() ? Rat(0) : it->second;
  }
  bool operator==(const DensityCoefficients& o) const = default;
};

// Homomorphism density: the normalized sum over all vertex maps into [n]
// of the product of edge weights, multiplicities as repeated factors.
// Evaluated by dynamic programming over a vertex elimination order.
Rat t(const Multigraph& h, const WeightedMatrix& a);

// Reference engine: the defining O(n^{|V|}) sum, kept as ground truth for
// the optimized engine.
Rat t_reference(const Multigraph& h, const WeightedMatrix& a);

// Same sum restricted to pairwise-distinct vertex tuples; 0 if |V(H)| > n.
Rat t_inj(const Multigraph& h, const WeightedMatrix& a);

// Expansion of t(H,.) over the injective basis on matrices of size n:
// t(H,a) = sum over loopless quotients H/P of n^{|V(H/P)|-|V(H)|} *
// t_inj(H/P,a), aggregated per isomorphism class. The coefficient of H
// itself is 1.
DensityCoefficients t_to_tinj(const Multigraph& h, int ambient_n);

enum class TransformDirection { TFromTInj, TInjFromT };

// Change-of-basis matrix between (t(H,.)) and (t_inj(H,.)) over an ordered
// basis; unit triangular in any order where every proper quotient precedes
// its source.
struct TransformMatrix {
  std::vector<Multigraph> basis;
  int ambient_n = 1;
  TransformDirection direction = TransformDirection::TFromTInj;
  std::vector<std::vector<Rat>> entries;  // entries[row][col]
};

TransformMatrix transform_matrix(const std::vector<Multigraph>& basis,
                                 int ambient_n, TransformDirection direction);

// t(H, f_a) computed through the graphon embedding: exact block
// integration of the step function, sampling each grid cell at its
// midpoint. Equals t(H, a).
Rat graphon_density_consistency(const Multigraph& h, const WeightedMatrix& a);

// Value of the linear combination at a.
Rat evaluate_density_sum(const DensityCoefficients& c,
                         const WeightedMatrix& a);

// JSON object {"basis": "t"|"tinj", "n": int,
//              "coeffs": [[multigraph text, rational string], ...]}.
DensityCoefficients parse_density_coefficients(std::istream& in);
DensityCoefficients parse_density_coefficients_text(const std::string& text);
std::string to_text(const DensityCoefficients& c);

}  // namespace graphon
