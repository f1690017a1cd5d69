#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "repfam/graphs.hpp"
#include "repfam/matroids.hpp"
#include "repfam/setfamily.hpp"
#include "repfam/treedecomp.hpp"

// Naive reference implementations for cross-validation. Deliberately simple
// and independent of the solver code paths; every size limit is a hard error
// so tests cannot silently skip an instance.

namespace repfam::oracle {

struct RepCounterexample {
    BitVec y;           // extension set with no adequate representative
    std::size_t s_index; // witnessing member of the full family
};

// Exhaustive representativeness check (universe <= 14). Returns a violating
// (Y, X) pair, or nothing when shat q-represents s including the weight
// inequalities of the chosen sense.
std::optional<RepCounterexample> brute_rep_check(const LinearMatroid& m,
                                                 const WeightedSetFamily& s,
                                                 const WeightedSetFamily& shat,
                                                 std::size_t q, Sense sense);

// Same over the uniform matroid U_{n,k} (independent iff cardinality <= k).
std::optional<RepCounterexample> brute_rep_check_uniform(std::size_t k,
                                                         const WeightedSetFamily& s,
                                                         const WeightedSetFamily& shat,
                                                         std::size_t q, Sense sense);

// Simple path with at least k edges, by exhaustive DFS (n <= 12).
std::optional<std::vector<std::size_t>> brute_k_path(const Graph& g, std::size_t k);

// Minimum cost over simple paths with between k and k_max edges (n <= 12).
std::optional<uint64_t> brute_cheap_tour(const Graph& g, std::size_t k, std::size_t k_max);

// Existence of a directed simple cycle of length >= k (n <= 12).
bool brute_long_cycle(const Digraph& d, std::size_t k);

// Minimum weight of a connected edge set spanning the terminals, over all
// edge subsets (n <= 10, m <= 20). Nothing when the terminals are disconnected.
std::optional<uint64_t> brute_steiner(const Graph& g,
                                      const std::vector<std::size_t>& terminals);

// Minimum arc count of a strong spanning subdigraph (n <= 6, m <= 20).
std::size_t brute_scss(const Digraph& d);

// Minimum arc count (or total weight) of a reachability-preserving
// subdigraph (n <= 6, m <= 20).
uint64_t brute_meg(const Digraph& d, bool weighted = false);

// Single-bag decomposition: always valid, width n - 1 (n <= 12).
TreeDecomposition trivial_tree_decomposition(const Graph& g);

// Does the host contain the pattern as a (not necessarily induced)
// subgraph? Backtracking over injections (host n <= 12).
bool brute_subgraph_iso(const Graph& host, const Graph& pattern);

} // namespace repfam::oracle
