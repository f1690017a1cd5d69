#pragma once

#include <optional>
#include <string>

#include "repfam/graphalgs.hpp"
#include "repfam/graphs.hpp"
#include "repfam/sepcol.hpp"
#include "repfam/treedecomp.hpp"

namespace repfam {

struct SolverConfig {
    uint64_t seed = 1;
    unsigned p_conf = 40;
    SepPipeline pipeline = SepPipeline::Auto;
    double epsilon = 0.25; // tree-embedding divide constant = ceil(1/epsilon)
};

struct SolverStats {
    bool monte_carlo = false; // any unverified collection / truncation involved
    std::vector<std::pair<std::string, std::size_t>> family_sizes;

    void record(const std::string& what, std::size_t size) {
        family_sizes.emplace_back(what, size);
    }
};

// Representative families of u->v path vertex sets; entry orders name paths.
struct PathEntry {
    std::vector<std::size_t> order; // u first
    uint64_t cost;
};

struct PathFamilyTable {
    std::size_t source = 0;
    // table[i][v] = family of i-vertex paths u->v (i >= 1)
    std::vector<std::vector<std::vector<PathEntry>>> table;
};

PathFamilyTable path_families(const Digraph& d, std::size_t source, std::size_t budget,
                              std::size_t depth, const SolverConfig& config,
                              SolverStats* stats = nullptr);

struct PathResult {
    std::vector<std::size_t> vertices;
    uint64_t cost = 0;
};

std::optional<PathResult> k_path(const Graph& g, std::size_t k, const SolverConfig& config = {},
                                 SolverStats* stats = nullptr);

std::optional<PathResult> short_cheap_tour(const Graph& g, std::size_t k,
                                           const SolverConfig& config = {},
                                           SolverStats* stats = nullptr,
                                           std::size_t k_max = 0 /* 0 = k */);

std::optional<std::vector<std::size_t>> long_directed_cycle(const Digraph& d, std::size_t k,
                                                            const SolverConfig& config = {},
                                                            SolverStats* stats = nullptr);

struct SteinerResult {
    std::vector<std::size_t> edges; // edge indices into g
    uint64_t weight = 0;
};

SteinerResult steiner_tree(const Graph& g, const std::vector<std::size_t>& terminals,
                           const TreeDecomposition& td, const SolverConfig& config = {},
                           SolverStats* stats = nullptr);

// Minimum strongly connected spanning subdigraph of a strong digraph.
std::vector<std::size_t> min_scss(const Digraph& d, const SolverConfig& config = {},
                                  SolverStats* stats = nullptr);

// Minimum equivalent (reachability-preserving) subdigraph; weighted when
// weighted == true, else arc count.
std::vector<std::size_t> meg(const Digraph& d, bool weighted = false,
                             const SolverConfig& config = {}, SolverStats* stats = nullptr);

// Subgraph-isomorphic embedding of a k-vertex tree; witness[x] = host vertex.
std::optional<std::vector<std::size_t>> k_tree(const Graph& g, const Graph& tree,
                                               const SolverConfig& config = {},
                                               SolverStats* stats = nullptr);

} // namespace repfam
