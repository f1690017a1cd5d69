#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "repfam/replinear.hpp"
#include "repfam/sepcol.hpp"
#include "repfam/solvers.hpp"

namespace py = pybind11;
using namespace repfam;

namespace {

using PySet = std::vector<std::size_t>;
using PyFamily = std::vector<std::pair<PySet, uint64_t>>;

WeightedSetFamily to_family(std::size_t n, std::size_t p, const PyFamily& in, Sense sense) {
    WeightedSetFamily f(n, p);
    for (const auto& [elems, w] : in) {
        BitVec b(n);
        for (auto e : elems) b.set(e);
        f.add(b, w, sense);
    }
    return f;
}

PyFamily from_family(const WeightedSetFamily& f) {
    PyFamily out;
    for (std::size_t i = 0; i < f.size(); ++i)
        out.emplace_back(f.set(i).elements(), f.weight(i));
    return out;
}

Sense sense_of(const std::string& s) {
    if (s == "min") return Sense::Min;
    if (s == "max") return Sense::Max;
    throw std::invalid_argument("sense must be 'min' or 'max'");
}

Graph graph_of(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, uint64_t>>& edges) {
    Graph g(n);
    for (const auto& [u, v, w] : edges) g.add_edge(u, v, w);
    return g;
}

Digraph digraph_of(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, uint64_t>>& arcs) {
    Digraph d(n);
    for (const auto& [u, v, w] : arcs) d.add_arc(u, v, w);
    return d;
}

} // namespace

PYBIND11_MODULE(_repfam, m) {
    m.doc() = "representative families toolkit";

    m.def(
        "rep_uniform",
        [](std::size_t n, std::size_t p, std::size_t q, const PyFamily& fam,
           const std::string& sense, uint64_t seed, unsigned p_conf) {
            Sense s = sense_of(sense);
            SepConfig sc{seed, p_conf, SepPipeline::Auto, 200000};
            return from_family(rep_uniform(to_family(n, p, fam, s), q, s, sc));
        },
        py::arg("n"), py::arg("p"), py::arg("q"), py::arg("family"),
        py::arg("sense") = "min", py::arg("seed") = 1, py::arg("p_conf") = 40,
        "q-representative subfamily over the uniform matroid U(n, p + q)");

    m.def(
        "rep_linear_uniform",
        [](std::size_t n, std::size_t k, std::size_t p, std::size_t q, const PyFamily& fam,
           const std::string& sense, uint64_t seed, unsigned p_conf) {
            Sense s = sense_of(sense);
            LinearMatroid mat = uniform_matroid(n, k);
            return from_family(rep_linear_auto(mat, to_family(n, p, fam, s), q, s, seed, p_conf));
        },
        py::arg("n"), py::arg("k"), py::arg("p"), py::arg("q"), py::arg("family"),
        py::arg("sense") = "min", py::arg("seed") = 1, py::arg("p_conf") = 40,
        "deterministic q-representative subfamily via minors of a Vandermonde matrix");

    m.def(
        "k_path",
        [](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, uint64_t>>& edges,
           std::size_t k, uint64_t seed) -> py::object {
            SolverConfig cfg;
            cfg.seed = seed;
            auto res = k_path(graph_of(n, edges), k, cfg);
            if (!res) return py::none();
            return py::make_tuple(res->vertices, res->cost);
        },
        py::arg("n"), py::arg("edges"), py::arg("k"), py::arg("seed") = 1,
        "simple path with at least k edges, or None");

    m.def(
        "short_cheap_tour",
        [](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, uint64_t>>& edges,
           std::size_t k, std::size_t k_max, uint64_t seed) -> py::object {
            SolverConfig cfg;
            cfg.seed = seed;
            auto res = short_cheap_tour(graph_of(n, edges), k, cfg, nullptr, k_max);
            if (!res) return py::none();
            return py::make_tuple(res->vertices, res->cost);
        },
        py::arg("n"), py::arg("edges"), py::arg("k"), py::arg("k_max") = 0,
        py::arg("seed") = 1, "cheapest path with k..k_max edges, or None");

    m.def(
        "long_directed_cycle",
        [](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, uint64_t>>& arcs,
           std::size_t k, uint64_t seed) -> py::object {
            SolverConfig cfg;
            cfg.seed = seed;
            auto res = long_directed_cycle(digraph_of(n, arcs), k, cfg);
            if (!res) return py::none();
            return py::cast(*res);
        },
        py::arg("n"), py::arg("arcs"), py::arg("k"), py::arg("seed") = 1,
        "directed simple cycle with at least k arcs, or None");

    m.def(
        "steiner_tree",
        [](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, uint64_t>>& edges,
           const std::vector<std::size_t>& terminals,
           const std::vector<std::vector<std::size_t>>& bags,
           const std::vector<std::pair<std::size_t, std::size_t>>& tree_edges) {
            Graph g = graph_of(n, edges);
            TreeDecomposition td;
            td.n = n;
            for (auto b : bags) {
                std::sort(b.begin(), b.end());
                td.bags.push_back(b);
            }
            td.tree_edges = tree_edges;
            auto res = steiner_tree(g, terminals, td);
            return py::make_tuple(res.edges, res.weight);
        },
        py::arg("n"), py::arg("edges"), py::arg("terminals"), py::arg("bags"),
        py::arg("tree_edges"),
        "minimum-weight edge set connecting the terminals, given a tree decomposition");

    m.def(
        "min_scss",
        [](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, uint64_t>>& arcs) {
            return min_scss(digraph_of(n, arcs));
        },
        py::arg("n"), py::arg("arcs"),
        "arc indices of a minimum strong spanning subdigraph");

    m.def(
        "meg",
        [](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, uint64_t>>& arcs,
           bool weighted) { return meg(digraph_of(n, arcs), weighted); },
        py::arg("n"), py::arg("arcs"), py::arg("weighted") = false,
        "arc indices of a minimum equivalent subdigraph");

    m.def(
        "k_tree",
        [](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, uint64_t>>& edges,
           std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& tree_edges,
           uint64_t seed) -> py::object {
            Graph tree(k);
            for (auto [u, v] : tree_edges) tree.add_edge(u, v);
            SolverConfig cfg;
            cfg.seed = seed;
            auto res = k_tree(graph_of(n, edges), tree, cfg);
            if (!res) return py::none();
            return py::cast(*res);
        },
        py::arg("n"), py::arg("edges"), py::arg("k"), py::arg("tree_edges"),
        py::arg("seed") = 1, "embedding of a k-vertex tree, or None");
}
