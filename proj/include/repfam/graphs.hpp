#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace repfam {

struct Edge {
    std::size_t u, v;
    uint64_t w;
};

// Undirected; parallel edges collapsed keeping min weight, self-loops dropped.
class Graph {
public:
    Graph() : n_(0) {}
    explicit Graph(std::size_t n) : n_(n), adj_(n) {}

    std::size_t n() const { return n_; }
    std::size_t m() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t i) const { return edges_[i]; }
    // (neighbor, edge index) pairs
    const std::vector<std::pair<std::size_t, std::size_t>>& adj(std::size_t v) const {
        return adj_[v];
    }

    // Returns edge index, or existing index when (u,v) is already present.
    std::size_t add_edge(std::size_t u, std::size_t v, uint64_t w = 1);
    std::optional<std::size_t> find_edge(std::size_t u, std::size_t v) const;
    bool has_edge(std::size_t u, std::size_t v) const { return find_edge(u, v).has_value(); }

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj_;
};

// Directed; parallel arcs collapsed keeping min weight, self-loops dropped.
class Digraph {
public:
    Digraph() : n_(0) {}
    explicit Digraph(std::size_t n) : n_(n), out_(n), in_(n) {}

    std::size_t n() const { return n_; }
    std::size_t m() const { return arcs_.size(); }
    const std::vector<Edge>& arcs() const { return arcs_; }
    const Edge& arc(std::size_t i) const { return arcs_[i]; }
    const std::vector<std::pair<std::size_t, std::size_t>>& out(std::size_t v) const {
        return out_[v];
    }
    const std::vector<std::pair<std::size_t, std::size_t>>& in(std::size_t v) const {
        return in_[v];
    }

    std::size_t add_arc(std::size_t u, std::size_t v, uint64_t w = 1);
    std::optional<std::size_t> find_arc(std::size_t u, std::size_t v) const;
    bool has_arc(std::size_t u, std::size_t v) const { return find_arc(u, v).has_value(); }

private:
    std::size_t n_;
    std::vector<Edge> arcs_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out_, in_;
};

enum class GraphFormat { Dimacs, PaceGr };

// Neutral parse result; DIMACS headers "p edge" and "p arc" select direction,
// PACE .gr input is always undirected.
struct GraphFile {
    bool directed = false;
    std::size_t n = 0;
    std::vector<Edge> edges; // as listed, 0-based, weight 1 when absent
};

GraphFile parse_graph(const std::string& text, GraphFormat format);
std::string emit_graph(const GraphFile& g, GraphFormat format);

Graph to_graph(const GraphFile& f);
Digraph to_digraph(const GraphFile& f); // undirected input becomes bidirected

} // namespace repfam
