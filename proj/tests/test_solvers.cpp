#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "repfam/oracle.hpp"
#include "repfam/solvers.hpp"

using namespace repfam;

namespace {

Graph random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng, uint64_t wmax = 1) {
    Graph g(n);
    std::size_t guard = 0;
    while (g.m() < m && ++guard < 10000) {
        std::size_t u = rng() % n, v = rng() % n;
        if (u != v) g.add_edge(u, v, 1 + rng() % wmax);
    }
    return g;
}

Digraph random_digraph(std::size_t n, std::size_t m, std::mt19937_64& rng,
                       uint64_t wmax = 1) {
    Digraph d(n);
    std::size_t guard = 0;
    while (d.m() < m && ++guard < 10000) {
        std::size_t u = rng() % n, v = rng() % n;
        if (u != v) d.add_arc(u, v, 1 + rng() % wmax);
    }
    return d;
}

Graph random_tree(std::size_t k, std::mt19937_64& rng) {
    Graph t(k);
    for (std::size_t v = 1; v < k; ++v) t.add_edge(rng() % v, v);
    return t;
}

// graph built inside a random width-bounded decomposition, so the pair
// (graph, td) is valid by construction
std::pair<Graph, TreeDecomposition> random_bounded_width(std::size_t n, std::size_t w,
                                                         std::mt19937_64& rng,
                                                         uint64_t wmax = 5) {
    TreeDecomposition td;
    td.n = n;
    std::vector<std::size_t> first(w + 1);
    for (std::size_t i = 0; i <= w && i < n; ++i) first[i] = i;
    first.resize(std::min(w + 1, n));
    td.bags.push_back(first);
    for (std::size_t v = td.bags[0].size(); v < n; ++v) {
        std::size_t parent = rng() % td.bags.size();
        std::vector<std::size_t> pool = td.bags[parent];
        std::shuffle(pool.begin(), pool.end(), rng);
        std::size_t take = std::min<std::size_t>(w, 1 + rng() % (pool.size()));
        std::vector<std::size_t> bag(pool.begin(), pool.begin() + take);
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(bag);
        td.tree_edges.emplace_back(parent, td.bags.size() - 1);
    }
    Graph g(n);
    for (const auto& bag : td.bags)
        for (std::size_t i = 0; i < bag.size(); ++i)
            for (std::size_t j = i + 1; j < bag.size(); ++j)
                if (rng() % 100 < 70) g.add_edge(bag[i], bag[j], 1 + rng() % wmax);
    return {g, td};
}

bool path_valid(const Graph& g, const std::vector<std::size_t>& vs, std::size_t k) {
    if (vs.size() < k + 1) return false;
    std::vector<char> seen(g.n(), 0);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (seen[vs[i]]) return false;
        seen[vs[i]] = 1;
        if (i && !g.has_edge(vs[i - 1], vs[i])) return false;
    }
    return true;
}

bool cycle_valid(const Digraph& d, const std::vector<std::size_t>& vs, std::size_t k) {
    if (vs.size() < k) return false;
    std::vector<char> seen(d.n(), 0);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (seen[vs[i]]) return false;
        seen[vs[i]] = 1;
        if (!d.has_arc(vs[i], vs[(i + 1) % vs.size()])) return false;
    }
    return true;
}

} // namespace

TEST_CASE("path_families on a directed path") {
    Digraph d(3);
    d.add_arc(0, 1);
    d.add_arc(1, 2);
    SolverConfig cfg;
    auto pf = path_families(d, 0, 3, 3, cfg);
    REQUIRE(pf.table.size() >= 4);
    REQUIRE(pf.table[3][2].size() == 1);
    CHECK(pf.table[3][2][0].order == std::vector<std::size_t>{0, 1, 2});

    Digraph edgeless(4);
    auto pf2 = path_families(edgeless, 0, 3, 3, cfg);
    for (std::size_t i = 2; i < pf2.table.size(); ++i)
        for (std::size_t v = 0; v < 4; ++v) CHECK(pf2.table[i][v].empty());
}

TEST_CASE("k_path basics") {
    Graph p5(5);
    for (std::size_t i = 0; i < 4; ++i) p5.add_edge(i, i + 1);
    auto yes = k_path(p5, 4);
    REQUIRE(yes);
    CHECK(path_valid(p5, yes->vertices, 4));
    CHECK_FALSE(k_path(p5, 5));
}

TEST_CASE("k_path agrees with the oracle") {
    std::mt19937_64 rng(83);
    for (int it = 0; it < 25; ++it) {
        std::size_t n = 6 + rng() % 3;
        Graph g = random_graph(n, 4 + rng() % 8, rng);
        std::size_t k = 3 + rng() % 3;
        SolverConfig cfg;
        cfg.seed = it + 1;
        auto got = k_path(g, k, cfg);
        auto want = oracle::brute_k_path(g, k);
        CHECK(got.has_value() == want.has_value());
        if (got) CHECK(path_valid(g, got->vertices, k));
    }
}

TEST_CASE("short_cheap_tour") {
    // two disjoint u-v routes of length 2 with total costs 5 and 3
    Graph g(4);
    g.add_edge(0, 1, 2);
    g.add_edge(1, 3, 3);
    g.add_edge(0, 2, 1);
    g.add_edge(2, 3, 2);
    auto res = short_cheap_tour(g, 2);
    REQUIRE(res);
    CHECK(res->cost == 3);

    // single path graph: its own cost
    Graph p3(3);
    p3.add_edge(0, 1, 4);
    p3.add_edge(1, 2, 6);
    auto own = short_cheap_tour(p3, 2);
    REQUIRE(own);
    CHECK(own->cost == 10);

    std::mt19937_64 rng(89);
    for (int it = 0; it < 15; ++it) {
        Graph h = random_graph(9, 10 + rng() % 6, rng, 9);
        std::size_t k = 2 + rng() % 4;
        std::size_t k_max = h.n() - 1;
        SolverConfig cfg;
        cfg.seed = it + 1;
        auto got = short_cheap_tour(h, k, cfg, nullptr, k_max);
        auto want = oracle::brute_cheap_tour(h, k, k_max);
        CHECK(got.has_value() == want.has_value());
        if (got && want) {
            CHECK(got->cost == *want);
            CHECK(path_valid(h, got->vertices, k));
        }
    }
}

TEST_CASE("long_directed_cycle basics") {
    Digraph c5(5);
    for (std::size_t i = 0; i < 5; ++i) c5.add_arc(i, (i + 1) % 5);
    auto yes = long_directed_cycle(c5, 4);
    REQUIRE(yes);
    CHECK(yes->size() == 5);
    CHECK(cycle_valid(c5, *yes, 4));

    Digraph dag(4);
    dag.add_arc(0, 1);
    dag.add_arc(1, 2);
    dag.add_arc(0, 3);
    CHECK_FALSE(long_directed_cycle(dag, 2));
}

TEST_CASE("long_directed_cycle agrees with the oracle") {
    std::mt19937_64 rng(97);
    for (int it = 0; it < 25; ++it) {
        Digraph d = random_digraph(7 + rng() % 2, 8 + rng() % 8, rng);
        std::size_t k = 3 + rng() % 3;
        SolverConfig cfg;
        cfg.seed = it + 1;
        auto got = long_directed_cycle(d, k, cfg);
        CHECK(got.has_value() == oracle::brute_long_cycle(d, k));
        if (got) CHECK(cycle_valid(d, *got, k));
    }
}

TEST_CASE("steiner basics") {
    // star center 0, terminals = the three leaves
    Graph star(4);
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    star.add_edge(0, 3);
    auto td = oracle::trivial_tree_decomposition(star);
    auto res = steiner_tree(star, {1, 2, 3}, td);
    CHECK(res.weight == 3);
    CHECK(res.edges.size() == 3);

    // single terminal
    auto single = steiner_tree(star, {2}, td);
    CHECK(single.weight == 0);
    CHECK(single.edges.empty());
}

TEST_CASE("steiner agrees with the oracle") {
    std::mt19937_64 rng(101);
    int done = 0;
    while (done < 12) {
        std::size_t n = 5 + rng() % 4;
        auto [g, td] = random_bounded_width(n, 2 + rng() % 2, rng);
        if (g.m() > 18 || g.m() < n - 1) continue;
        std::size_t nt = 2 + rng() % 3;
        std::vector<std::size_t> terms;
        while (terms.size() < nt) {
            std::size_t t = rng() % n;
            if (std::find(terms.begin(), terms.end(), t) == terms.end())
                terms.push_back(t);
        }
        auto want = oracle::brute_steiner(g, terms);
        if (!want) {
            CHECK_THROWS(steiner_tree(g, terms, td));
            ++done;
            continue;
        }
        auto res = steiner_tree(g, terms, td);
        CHECK(res.weight == *want);
        // witness: connected and spans the terminals
        std::vector<std::size_t> parent(g.n());
        for (std::size_t v = 0; v < g.n(); ++v) parent[v] = v;
        std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
            return parent[v] == v ? v : parent[v] = find(parent[v]);
        };
        uint64_t w = 0;
        for (auto e : res.edges) {
            parent[find(g.edge(e).u)] = find(g.edge(e).v);
            w += g.edge(e).w;
        }
        CHECK(w == res.weight);
        for (auto t : terms) CHECK(find(t) == find(terms[0]));
        ++done;
    }
}

TEST_CASE("min_scss basics") {
    // directed cycle is its own optimum
    for (std::size_t n : {3, 5}) {
        Digraph c(n);
        for (std::size_t i = 0; i < n; ++i) c.add_arc(i, (i + 1) % n);
        CHECK(min_scss(c).size() == n);
    }

    // complete digraph on 3 vertices: a 3-cycle suffices
    Digraph k3(3);
    for (std::size_t u = 0; u < 3; ++u)
        for (std::size_t v = 0; v < 3; ++v)
            if (u != v) k3.add_arc(u, v);
    CHECK(min_scss(k3).size() == 3);

    // bidirected P_3 needs all 4 arcs
    Digraph p3(3);
    p3.add_arc(0, 1);
    p3.add_arc(1, 0);
    p3.add_arc(1, 2);
    p3.add_arc(2, 1);
    CHECK(min_scss(p3).size() == 4);

    Digraph notstrong(3);
    notstrong.add_arc(0, 1);
    CHECK_THROWS(min_scss(notstrong));
}

TEST_CASE("min_scss agrees with the oracle") {
    std::mt19937_64 rng(103);
    int done = 0;
    while (done < 10) {
        std::size_t n = 4 + rng() % 3;
        Digraph d = random_digraph(n, n + rng() % 4, rng);
        if (scc(d).size() != 1) continue;
        CHECK(min_scss(d).size() == oracle::brute_scss(d));
        ++done;
    }
}

TEST_CASE("meg basics") {
    // a DAG that is its own transitive reduction
    Digraph dag(4);
    dag.add_arc(0, 1);
    dag.add_arc(1, 2);
    dag.add_arc(1, 3);
    CHECK(meg(dag).size() == 3);

    // transitive tournament on 4 vertices: Hamiltonian path remains
    Digraph t4(4);
    for (std::size_t u = 0; u < 4; ++u)
        for (std::size_t v = u + 1; v < 4; ++v) t4.add_arc(u, v);
    CHECK(meg(t4).size() == 3);

    // 2-cycle plus a DAG tail
    Digraph mix(4);
    mix.add_arc(0, 1);
    mix.add_arc(1, 0);
    mix.add_arc(1, 2);
    mix.add_arc(2, 3);
    CHECK(meg(mix).size() == oracle::brute_meg(mix));
}

TEST_CASE("meg agrees with the oracle") {
    std::mt19937_64 rng(107);
    for (int it = 0; it < 10; ++it) {
        std::size_t n = 4 + rng() % 3;
        Digraph d = random_digraph(n, 3 + rng() % 6, rng, 6);
        auto got = meg(d);
        CHECK(got.size() == oracle::brute_meg(d));
        auto gotw = meg(d, true);
        uint64_t w = 0;
        for (auto a : gotw) w += d.arc(a).w;
        CHECK(w == oracle::brute_meg(d, true));
    }
}

TEST_CASE("k_tree basics") {
    // P_3 into a triangle
    Graph tri(3);
    tri.add_edge(0, 1);
    tri.add_edge(1, 2);
    tri.add_edge(0, 2);
    Graph p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    auto yes = k_tree(tri, p3);
    REQUIRE(yes);

    // star K_{1,4} into P_10: impossible (max degree 2)
    Graph p10(10);
    for (std::size_t i = 0; i < 9; ++i) p10.add_edge(i, i + 1);
    Graph star(5);
    for (std::size_t i = 1; i < 5; ++i) star.add_edge(0, i);
    CHECK_FALSE(k_tree(p10, star));

    Graph nottree(3);
    nottree.add_edge(0, 1);
    CHECK_THROWS(k_tree(tri, nottree));
}

TEST_CASE("k_tree agrees with the oracle") {
    std::mt19937_64 rng(109);
    for (int it = 0; it < 15; ++it) {
        std::size_t n = 6 + rng() % 3;
        std::size_t k = 3 + rng() % 4;
        Graph g = random_graph(n, 5 + rng() % 8, rng);
        Graph t = random_tree(k, rng);
        SolverConfig cfg;
        cfg.seed = it + 1;
        auto got = k_tree(g, t, cfg);
        CHECK(got.has_value() == oracle::brute_subgraph_iso(g, t));
        if (got) {
            // witness: injective and edge-preserving
            std::vector<char> used(g.n(), 0);
            for (auto h : *got) {
                CHECK_FALSE(used[h]);
                used[h] = 1;
            }
            for (const auto& e : t.edges()) CHECK(g.has_edge((*got)[e.u], (*got)[e.v]));
        }
    }
}

TEST_CASE("solvers are deterministic given the seed") {
    std::mt19937_64 rng(113);
    Graph g = random_graph(8, 12, rng, 7);
    SolverConfig cfg;
    cfg.seed = 5;
    auto a = k_path(g, 4, cfg);
    auto b = k_path(g, 4, cfg);
    REQUIRE(a.has_value() == b.has_value());
    if (a) {
        CHECK(a->vertices == b->vertices);
        CHECK(a->cost == b->cost);
    }
}
