#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "repfam/graphalgs.hpp"
#include "repfam/graphs.hpp"
#include "repfam/treedecomp.hpp"

using namespace repfam;

namespace {

Digraph random_digraph(std::size_t n, std::size_t m, std::mt19937_64& rng,
                       uint64_t wmax = 1) {
    Digraph d(n);
    while (d.m() < m) {
        std::size_t u = rng() % n, v = rng() % n;
        if (u != v) d.add_arc(u, v, 1 + rng() % wmax);
    }
    return d;
}

std::vector<std::vector<char>> reach_of(const Digraph& d) {
    std::size_t n = d.n();
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
    for (std::size_t v = 0; v < n; ++v) r[v][v] = 1;
    for (const auto& a : d.arcs()) r[a.u][a.v] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = 1;
    return r;
}

} // namespace

TEST_CASE("dimacs parsing") {
    GraphFile f = parse_graph("c comment\np edge 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5 7\n",
                              GraphFormat::Dimacs);
    CHECK_FALSE(f.directed);
    CHECK(f.n == 5);
    REQUIRE(f.edges.size() == 4);
    CHECK(f.edges[0].u == 0);
    CHECK(f.edges[3].w == 7);

    GraphFile a = parse_graph("p arc 3 2\na 1 2\na 2 3\n", GraphFormat::Dimacs);
    CHECK(a.directed);

    CHECK_THROWS(parse_graph("p edge 3 1\ne 1 9\n", GraphFormat::Dimacs));
    CHECK_THROWS(parse_graph("e 1 2\n", GraphFormat::Dimacs)); // missing header
    CHECK_THROWS(parse_graph("p edge 2 1\ne 1 x\n", GraphFormat::Dimacs));
}

TEST_CASE("pace parsing") {
    GraphFile f = parse_graph("c pace\np tw 5 4\n1 2\n2 3\n3 4\n4 5\n", GraphFormat::PaceGr);
    CHECK(f.n == 5);
    CHECK(f.edges.size() == 4);
    // empty edge list
    GraphFile e = parse_graph("p tw 3 0\n", GraphFormat::PaceGr);
    CHECK(e.n == 3);
    CHECK(e.edges.empty());
}

TEST_CASE("emit round-trip") {
    std::string text = "p edge 4 3\ne 1 2\ne 2 3 5\ne 3 4\n";
    GraphFile f = parse_graph(text, GraphFormat::Dimacs);
    GraphFile f2 = parse_graph(emit_graph(f, GraphFormat::Dimacs), GraphFormat::Dimacs);
    CHECK(f2.n == f.n);
    REQUIRE(f2.edges.size() == f.edges.size());
    for (std::size_t i = 0; i < f.edges.size(); ++i) {
        CHECK(f2.edges[i].u == f.edges[i].u);
        CHECK(f2.edges[i].v == f.edges[i].v);
        CHECK(f2.edges[i].w == f.edges[i].w);
    }
}

TEST_CASE("parser fuzz does not crash") {
    std::mt19937_64 rng(71);
    const char alphabet[] = "petwa 0123456789\n-x";
    for (int it = 0; it < 2000; ++it) {
        std::string s;
        std::size_t len = rng() % 60;
        for (std::size_t i = 0; i < len; ++i)
            s.push_back(alphabet[rng() % (sizeof(alphabet) - 1)]);
        for (auto fmt : {GraphFormat::Dimacs, GraphFormat::PaceGr}) {
            try {
                parse_graph(s, fmt);
            } catch (const std::exception&) {
                // parse errors are fine; crashes are not
            }
        }
    }
    CHECK(true);
}

TEST_CASE("graph containers collapse duplicates and drop loops") {
    Graph g(3);
    g.add_edge(0, 1, 5);
    g.add_edge(1, 0, 3); // parallel, cheaper
    REQUIRE(g.m() == 1);
    CHECK(g.edge(0).w == 3);

    GraphFile f = parse_graph("p edge 3 2\ne 1 1\ne 1 2\n", GraphFormat::Dimacs);
    CHECK(to_graph(f).m() == 1); // self-loop dropped
}

TEST_CASE("scc") {
    // directed cycle: one component
    Digraph c5(5);
    for (std::size_t i = 0; i < 5; ++i) c5.add_arc(i, (i + 1) % 5);
    CHECK(scc(c5).size() == 1);

    // DAG: n singletons
    Digraph dag(4);
    dag.add_arc(0, 1);
    dag.add_arc(1, 2);
    dag.add_arc(0, 3);
    CHECK(scc(dag).size() == 4);

    // random digraphs: mutual reachability oracle
    std::mt19937_64 rng(73);
    for (int it = 0; it < 30; ++it) {
        Digraph d = random_digraph(6, 10, rng);
        auto comps = scc(d);
        auto r = reach_of(d);
        std::vector<std::size_t> comp_of(6);
        for (std::size_t ci = 0; ci < comps.size(); ++ci)
            for (auto v : comps[ci]) comp_of[v] = ci;
        for (std::size_t u = 0; u < 6; ++u)
            for (std::size_t v = 0; v < 6; ++v)
                CHECK((comp_of[u] == comp_of[v]) == (r[u][v] && r[v][u]));
    }
}

TEST_CASE("min_cost_arborescence") {
    // path from root, zero weights
    Digraph path(4);
    path.add_arc(0, 1, 0);
    path.add_arc(1, 2, 0);
    path.add_arc(2, 3, 0);
    auto res = min_cost_arborescence(path, 0, {0, 0, 0}, Branching::Out);
    REQUIRE(res);
    CHECK(res->size() == 3);

    // unreachable vertex: infeasible
    Digraph un(3);
    un.add_arc(0, 1);
    CHECK_FALSE(min_cost_arborescence(un, 0, {1}, Branching::Out));

    // random weighted digraphs vs exhaustive enumeration of arc subsets
    std::mt19937_64 rng(79);
    for (int it = 0; it < 100; ++it) {
        std::size_t n = 3 + rng() % 4;
        Digraph d = random_digraph(n, std::min<std::size_t>(n * 2, n * (n - 1)), rng, 9);
        std::vector<uint64_t> w;
        for (const auto& a : d.arcs()) w.push_back(a.w);
        for (Branching dir : {Branching::Out, Branching::In}) {
            auto got = min_cost_arborescence(d, 0, w, dir);
            // brute force: try all arc subsets of size n-1
            std::optional<uint64_t> best;
            for (uint32_t mask = 0; mask < (1u << d.m()); ++mask) {
                if (std::size_t(__builtin_popcount(mask)) != n - 1) continue;
                std::vector<std::size_t> indeg(n, 0);
                uint64_t cost = 0;
                for (std::size_t a = 0; a < d.m(); ++a)
                    if (mask >> a & 1u) {
                        std::size_t head = dir == Branching::Out ? d.arc(a).v : d.arc(a).u;
                        ++indeg[head];
                        cost += w[a];
                    }
                bool shape = indeg[0] == 0;
                for (std::size_t v = 1; v < n; ++v) shape &= indeg[v] == 1;
                if (!shape) continue;
                // connectivity from the root
                std::vector<char> seen(n, 0);
                seen[0] = 1;
                for (std::size_t round = 0; round < n; ++round)
                    for (std::size_t a = 0; a < d.m(); ++a)
                        if (mask >> a & 1u) {
                            std::size_t t = dir == Branching::Out ? d.arc(a).u : d.arc(a).v;
                            std::size_t h = dir == Branching::Out ? d.arc(a).v : d.arc(a).u;
                            if (seen[t]) seen[h] = 1;
                        }
                bool all = true;
                for (std::size_t v = 0; v < n; ++v) all &= seen[v] != 0;
                if (all && (!best || cost < *best)) best = cost;
            }
            if (!best) {
                CHECK_FALSE(got);
            } else {
                REQUIRE(got);
                uint64_t cost = 0;
                for (auto a : *got) cost += w[a];
                CHECK(cost == *best);
            }
        }
    }
}

TEST_CASE("dfs_path_or_shallow") {
    Graph p5(5);
    for (std::size_t i = 0; i < 4; ++i) p5.add_edge(i, i + 1);
    auto res = dfs_path_or_shallow(p5, 4);
    CHECK(res.path.has_value());
    auto res2 = dfs_path_or_shallow(p5, 5);
    CHECK_FALSE(res2.path.has_value());
    CHECK(res2.depth <= 5);
}

TEST_CASE("tree decomposition parse and validate") {
    std::string td_text = "s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n";
    TreeDecomposition td = parse_td(td_text);
    CHECK(td.width() == 1);
    Graph p4(4);
    p4.add_edge(0, 1);
    p4.add_edge(1, 2);
    p4.add_edge(2, 3);
    validate_td(td, p4); // should not throw

    // edge not covered
    Graph bad(4);
    bad.add_edge(0, 3);
    CHECK_THROWS(validate_td(td, bad));

    CHECK_THROWS(parse_td("s td 2 1 2\nb 1 1\nb 2 2\n")); // missing tree edge
}

TEST_CASE("niceify structure") {
    std::string td_text = "s td 3 3 5\nb 1 1 2 3\nb 2 2 3 4\nb 3 4 5\n1 2\n2 3\n";
    TreeDecomposition td = parse_td(td_text);
    auto [nice, root, width] = niceify(td);
    REQUIRE(!nice.empty());
    CHECK(width == td.width());
    CHECK(nice[root].bag.empty()); // root bag empty
    for (std::size_t i = 0; i < nice.size(); ++i) {
        const auto& node = nice[i];
        for (auto c : node.children) CHECK(c < i); // children precede parents
        switch (node.kind) {
            case NodeKind::Base:
                CHECK(node.bag.empty());
                CHECK(node.children.empty());
                break;
            case NodeKind::Introduce:
                REQUIRE(node.children.size() == 1);
                CHECK(node.bag.size() == nice[node.children[0]].bag.size() + 1);
                break;
            case NodeKind::Forget:
                REQUIRE(node.children.size() == 1);
                CHECK(node.bag.size() + 1 == nice[node.children[0]].bag.size());
                break;
            case NodeKind::Join:
                REQUIRE(node.children.size() == 2);
                CHECK(nice[node.children[0]].bag == node.bag);
                CHECK(nice[node.children[1]].bag == node.bag);
                break;
        }
    }
}
