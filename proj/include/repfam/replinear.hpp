#pragma once

#include "repfam/matroids.hpp"
#include "repfam/setfamily.hpp"

namespace repfam {

// All p-subsets of [k] in colexicographic order (combinatorial number system).
std::vector<std::vector<std::size_t>> subsets_colex(std::size_t k, std::size_t p);

// Colex rank of a sorted index set.
std::size_t colex_rank(const std::vector<std::size_t>& s);

// Vector of all p x p minors det(A[I, cols]) over I in colex order, computed by
// expanding the exterior product one column at a time. Zero vector iff the
// columns are dependent.
std::vector<uint64_t> wedge_vector(const Matrix& a, const std::vector<std::size_t>& cols);

// X ∪ Y for disjoint X ∈ a, Y ∈ b with summed weights.
WeightedSetFamily family_product(const WeightedSetFamily& a, const WeightedSetFamily& b,
                                 Sense sense = Sense::Min);

// Weighted q-representative subfamily; requires rank(M) == set_size + q.
WeightedSetFamily rep_linear(const LinearMatroid& m, const WeightedSetFamily& s,
                             std::size_t q, Sense sense);

// Truncates to rank set_size + q first; Monte Carlo unless the truncation was
// verified exhaustively (small ground sets).
WeightedSetFamily rep_linear_auto(const LinearMatroid& m, const WeightedSetFamily& s,
                                  std::size_t q, Sense sense, uint64_t seed,
                                  unsigned p_conf);

} // namespace repfam
