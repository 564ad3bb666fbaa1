#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "graphon/multigraph.hpp"
#include "graphon/rational.hpp"
#include "graphon/weighted_graph.hpp"

namespace graphon {

struct CutNormResult {
  Rat value;
  std::vector<int> witness_s;  // 0-based; serialized 1-based
  std::vector<int> witness_t;
};

// Exact matrix cut norm: max over index sets S, T of
// |sum_{i in S, j in T} a_ij| / n^2, witnesses included. For each S the
// optimal T follows the column-sum signs; ties resolved toward the
// lexicographically least S, then T, with witnesses trimmed to strictly
// contributing columns.
CutNormResult cut_norm_exact(const WeightedMatrix& a, int size_limit = 16);

struct L1Result {
  Rat total;               // integral of |f_a - f_b| over [0,1]^2
  Rat off_diagonal_blocks; // mass outside the diagonal blocks of the
                           // coarser of the two grids
};

// Exact L1 distance of the embedded step functions, computed on the
// common refinement grid of size lcm(n_a, n_b). Sizes may differ.
L1Result l1_distance(const WeightedMatrix& a, const WeightedMatrix& b);

// Min over vertex permutations of the cut norm of a - permute(b, sigma).
// An upper bound on the cut distance of the embedded graphons (the true
// infimum also ranges over non-permutation measure-preserving maps).
Rat cut_distance_perm(const WeightedMatrix& a, const WeightedMatrix& b,
                      int size_limit = 8);

// For {0,1}-valued a, t(H,a) = t(H^simple,a); returns the comparison.
bool simplify_identity_check(const Multigraph& h, const WeightedMatrix& a);

// JSON object {"value": rational string, "S": [...], "T": [...]}.
std::string to_text(const CutNormResult& r);

}  // namespace graphon
