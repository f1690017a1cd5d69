#pragma once

#include <string>
#include <vector>

#include "repfam/graphs.hpp"

namespace repfam {

struct TreeDecomposition {
    std::size_t n = 0; // graph vertex count
    std::vector<std::vector<std::size_t>> bags; // sorted vertex lists
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;

    std::size_t width() const;
};

// PACE 2016 .td format: "s td <bags> <width+1> <n>", "b i v1 v2 ...", tree edges.
TreeDecomposition parse_td(const std::string& text);

// Throws when the three decomposition axioms fail for g.
void validate_td(const TreeDecomposition& td, const Graph& g);

enum class NodeKind { Base, Introduce, Forget, Join };

struct NiceNode {
    NodeKind kind;
    std::size_t vertex = 0; // introduced/forgotten vertex
    std::vector<std::size_t> bag; // sorted
    std::vector<std::size_t> children;
};

// Rooted at the last node; root bag empty.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    std::size_t root = 0;
    std::size_t width = 0;
};

NiceTreeDecomposition niceify(const TreeDecomposition& td);

} // namespace repfam
