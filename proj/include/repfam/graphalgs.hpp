#pragma once

#include <optional>

#include "repfam/graphs.hpp"

namespace repfam {

// Strongly connected components in a deterministic order; each component's
// vertex list is sorted.
std::vector<std::vector<std::size_t>> scc(const Digraph& d);

struct DfsResult {
    // simple path with >= k edges, when one shows up as a DFS root-to-node path
    std::optional<std::vector<std::size_t>> path;
    std::size_t depth = 0; // max DFS tree depth (edges) when no path returned
};

DfsResult dfs_path_or_shallow(const Graph& g, std::size_t k);

enum class Branching { Out, In };

// Minimum-cost spanning out-/in-branching rooted at `root`; weights override
// the stored arc weights. Returns original arc indices or nullopt.
std::optional<std::vector<std::size_t>> min_cost_arborescence(
    const Digraph& d, std::size_t root, const std::vector<uint64_t>& weights,
    Branching direction);

} // namespace repfam
