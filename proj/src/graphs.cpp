#include "repfam/graphs.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace repfam {

std::size_t Graph::add_edge(std::size_t u, std::size_t v, uint64_t w) {
    if (u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop not supported");
    if (u > v) std::swap(u, v);
    if (auto e = find_edge(u, v)) {
        edges_[*e].w = std::min(edges_[*e].w, w);
        return *e;
    }
    edges_.push_back({u, v, w});
    adj_[u].emplace_back(v, edges_.size() - 1);
    adj_[v].emplace_back(u, edges_.size() - 1);
    return edges_.size() - 1;
}

std::optional<std::size_t> Graph::find_edge(std::size_t u, std::size_t v) const {
    if (u >= n_ || v >= n_) return std::nullopt;
    for (auto [w, e] : adj_[u])
        if (w == v) return e;
    return std::nullopt;
}

std::size_t Digraph::add_arc(std::size_t u, std::size_t v, uint64_t w) {
    if (u >= n_ || v >= n_) throw std::invalid_argument("arc endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop not supported");
    if (auto e = find_arc(u, v)) {
        arcs_[*e].w = std::min(arcs_[*e].w, w);
        return *e;
    }
    arcs_.push_back({u, v, w});
    out_[u].emplace_back(v, arcs_.size() - 1);
    in_[v].emplace_back(u, arcs_.size() - 1);
    return arcs_.size() - 1;
}

std::optional<std::size_t> Digraph::find_arc(std::size_t u, std::size_t v) const {
    if (u >= n_ || v >= n_) return std::nullopt;
    for (auto [w, e] : out_[u])
        if (w == v) return e;
    return std::nullopt;
}

namespace {

[[noreturn]] void parse_fail(std::size_t lineno, const std::string& why) {
    throw std::runtime_error("parse error on line " + std::to_string(lineno) + ": " + why);
}

} // namespace

GraphFile parse_graph(const std::string& text, GraphFormat format) {
    GraphFile g;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0, m_declared = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string tok;
            ls >> tok;
            if (tok != "p") parse_fail(lineno, "expected problem header");
            std::string kind;
            if (!(ls >> kind >> g.n >> m_declared)) parse_fail(lineno, "bad header fields");
            if (format == GraphFormat::Dimacs) {
                if (kind == "edge") g.directed = false;
                else if (kind == "arc") g.directed = true;
                else parse_fail(lineno, "unknown DIMACS kind '" + kind + "'");
            } else {
                if (kind != "tw") parse_fail(lineno, "expected 'p tw' header");
                g.directed = false;
            }
            have_header = true;
            continue;
        }
        std::size_t u, v;
        uint64_t w = 1;
        if (format == GraphFormat::Dimacs) {
            std::string tok;
            ls >> tok;
            if (tok != "e" && tok != "a") parse_fail(lineno, "expected edge line");
            if (!(ls >> u >> v)) parse_fail(lineno, "bad edge endpoints");
            ls >> w; // optional
        } else {
            if (!(ls >> u >> v)) parse_fail(lineno, "bad edge endpoints");
            ls >> w;
        }
        if (u < 1 || v < 1 || u > g.n || v > g.n) parse_fail(lineno, "vertex id out of range");
        if (u == v) continue; // self-loops dropped
        g.edges.push_back({u - 1, v - 1, w});
    }
    if (!have_header) throw std::runtime_error("parse error: missing header");
    if (g.edges.size() > m_declared)
        throw std::runtime_error("parse error: more edges than declared");
    return g;
}

std::string emit_graph(const GraphFile& g, GraphFormat format) {
    std::ostringstream out;
    if (format == GraphFormat::Dimacs) {
        out << "p " << (g.directed ? "arc" : "edge") << ' ' << g.n << ' ' << g.edges.size()
            << '\n';
        for (const auto& e : g.edges) {
            out << (g.directed ? 'a' : 'e') << ' ' << e.u + 1 << ' ' << e.v + 1;
            if (e.w != 1) out << ' ' << e.w;
            out << '\n';
        }
    } else {
        out << "p tw " << g.n << ' ' << g.edges.size() << '\n';
        for (const auto& e : g.edges) out << e.u + 1 << ' ' << e.v + 1 << '\n';
    }
    return out.str();
}

Graph to_graph(const GraphFile& f) {
    if (f.directed) throw std::invalid_argument("directed input where a graph was expected");
    Graph g(f.n);
    for (const auto& e : f.edges) g.add_edge(e.u, e.v, e.w);
    return g;
}

Digraph to_digraph(const GraphFile& f) {
    Digraph d(f.n);
    for (const auto& e : f.edges) {
        d.add_arc(e.u, e.v, e.w);
        if (!f.directed) d.add_arc(e.v, e.u, e.w);
    }
    return d;
}

} // namespace repfam
