#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphon/rational.hpp"

namespace graphon {

// Symmetric n x n rational matrix with zero diagonal: an edge-weighted
// complete graph on n labeled vertices. in_unit_range() marks whether all
// entries lie in [0,1], i.e. whether the matrix embeds as a step graphon.
class WeightedMatrix {
 public:
  // Validates squareness, symmetry, and the zero diagonal.
  static WeightedMatrix make(std::vector<std::vector<Rat>> entries);

  static WeightedMatrix zero(int n);

  int size() const { return static_cast<int>(entries_.size()); }
  const Rat& at(int i, int j) const { return entries_[i][j]; }
  const std::vector<std::vector<Rat>>& entries() const { return entries_; }
  bool in_unit_range() const { return in_unit_range_; }

  bool operator==(const WeightedMatrix& o) const {
    return entries_ == o.entries_;
  }

 private:
  WeightedMatrix() = default;
  std::vector<std::vector<Rat>> entries_;
  bool in_unit_range_ = false;
};

// Gateaux directions share the shape constraints (symmetric, zero
// diagonal) but carry no range restriction.
using DirectionMatrix = WeightedMatrix;

// Step-function value f_a(x,y) of the embedded graphon: the entry of the
// grid cell containing (x,y), and 0 when x or y is 0.
Rat step_graphon_eval(const WeightedMatrix& a, const Rat& x, const Rat& y);

// k-fold blow-up: each vertex replaced by k clones. The result's diagonal
// is zero; within-block off-diagonal entries replicate the source diagonal
// value, which is also zero, so the embedded step functions agree.
WeightedMatrix blow_up(const WeightedMatrix& a, int k);

// True iff a + eps*g stays entrywise in [0,1] for some eps > 0. Requires a
// to be [0,1]-valued.
bool check_admissible(const WeightedMatrix& a, const DirectionMatrix& g);

// b with b[perm[i]][perm[j]] = a[i][j].
WeightedMatrix permute(const WeightedMatrix& a, const std::vector<int>& perm);

enum class ValueMode { RationalGrid, ZeroOne };

// Deterministic pseudo-random symmetric zero-diagonal matrix. RationalGrid
// draws entries from {0, 1/8, ..., 1}; ZeroOne from {0, 1}.
WeightedMatrix random_matrix(int n, std::uint64_t seed, ValueMode mode);

// Deterministic signed direction with entries in {-1, -7/8, ..., 1}.
DirectionMatrix random_direction(int n, std::uint64_t seed);

// Entrywise projection of g to an admissible direction at a: forces the
// sign at entries where a sits on the boundary of [0,1].
DirectionMatrix make_admissible(const WeightedMatrix& a,
                                const DirectionMatrix& g);

// a + sum of coeff*g over terms.
WeightedMatrix linear_combination(
    const WeightedMatrix& a,
    const std::vector<std::pair<Rat, DirectionMatrix>>& terms);

// JSON object {"n": int, "rows": [[rational strings]]}.
WeightedMatrix parse_matrix(std::istream& in);
WeightedMatrix parse_matrix_text(const std::string& text);
std::string to_text(const WeightedMatrix& a);

}  // namespace graphon
