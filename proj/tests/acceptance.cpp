// End-to-end acceptance checks: one PASS/FAIL line per criterion, nonzero
// exit when any gating criterion fails. Criterion 10 is a performance report
// and never gates.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "repfam/oracle.hpp"
#include "repfam/replinear.hpp"
#include "repfam/sepcol.hpp"
#include "repfam/solvers.hpp"

using namespace repfam;

namespace {

int failures = 0;

void report(int crit, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", crit, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

uint64_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    uint64_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

Graph random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng, uint64_t wmax = 1) {
    Graph g(n);
    std::size_t guard = 0;
    while (g.m() < m && ++guard < 10000) {
        std::size_t u = rng() % n, v = rng() % n;
        if (u != v) g.add_edge(u, v, 1 + rng() % wmax);
    }
    return g;
}

Digraph random_digraph(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    Digraph d(n);
    std::size_t guard = 0;
    while (d.m() < m && ++guard < 10000) {
        std::size_t u = rng() % n, v = rng() % n;
        if (u != v) d.add_arc(u, v, 1);
    }
    return d;
}

Graph random_tree(std::size_t k, std::mt19937_64& rng) {
    Graph t(k);
    for (std::size_t v = 1; v < k; ++v) t.add_edge(rng() % v, v);
    return t;
}

std::pair<Graph, TreeDecomposition> random_bounded_width(std::size_t n, std::size_t w,
                                                         std::mt19937_64& rng) {
    TreeDecomposition td;
    td.n = n;
    std::vector<std::size_t> first;
    for (std::size_t i = 0; i <= w && i < n; ++i) first.push_back(i);
    td.bags.push_back(first);
    for (std::size_t v = first.size(); v < n; ++v) {
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
                if (rng() % 100 < 60) g.add_edge(bag[i], bag[j], 1 + rng() % 5);
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

void append_set(std::ostringstream& out, const std::vector<std::size_t>& vs) {
    for (auto v : vs) out << ' ' << v;
    out << '\n';
}

// Criteria 1 + 2: size bound and representativeness on 200 random instances.
void criterion_1_2() {
    std::mt19937_64 rng(2024);
    int size_bad = 0, rep_bad = 0, done = 0;
    while (done < 200) {
        bool use_graphic = done % 5 == 4;
        std::size_t p = 1 + rng() % 3;
        std::size_t q = 1 + rng() % 3;
        Sense sense = done % 2 ? Sense::Min : Sense::Max;
        if (!use_graphic) {
            std::size_t n = p + q + 1 + rng() % (10 - p - q);
            LinearMatroid m = uniform_matroid(n, p + q);
            WeightedSetFamily s(n, p);
            for (int i = 0; i < 15; ++i) {
                std::vector<std::size_t> perm(n);
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                BitVec b(n);
                for (std::size_t j = 0; j < p; ++j) b.set(perm[j]);
                s.add(b, rng() % 100);
            }
            auto rep = rep_linear(m, s, q, sense);
            if (rep.size() > binom(p + q, p)) ++size_bad;
            if (oracle::brute_rep_check(m, s, rep, q, sense)) ++rep_bad;
        } else {
            std::size_t n = 4 + rng() % 3;
            Graph g = random_graph(n, std::min<std::size_t>(10, n + 2 + rng() % 3), rng);
            GraphEdgeView view;
            view.n = n;
            for (const auto& e : g.edges()) {
                view.tail.push_back(e.u);
                view.head.push_back(e.v);
                view.labels.push_back("e" + std::to_string(view.tail.size() - 1));
            }
            LinearMatroid m = graphic_matroid(view);
            if (m.rank() < p + q) continue;
            WeightedSetFamily s(g.m(), p);
            for (int i = 0; i < 15; ++i) {
                std::vector<std::size_t> perm(g.m());
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                std::vector<std::size_t> cols(perm.begin(), perm.begin() + p);
                if (!m.is_independent(cols)) continue;
                BitVec b(g.m());
                for (auto c : cols) b.set(c);
                s.add(b, rng() % 100);
            }
            if (s.size() == 0) continue;
            // truncation to p+q is exhaustively verified at this ground size
            LinearMatroid t = truncate(m, p + q, uint64_t(done) + 1, 40);
            auto rep = rep_linear(t, s, q, sense);
            if (rep.size() > binom(p + q, p)) ++size_bad;
            if (oracle::brute_rep_check(t, s, rep, q, sense)) ++rep_bad;
        }
        ++done;
    }
    report(1, size_bad == 0,
           "200 instances within the C(p+q,p) size bound (" + std::to_string(size_bad) +
               " violations)");
    report(2, rep_bad == 0,
           "exhaustive representativeness check on the same instances (" +
               std::to_string(rep_bad) + " counterexamples)");
}

// Criterion 3: the signed minor expansion matches the full determinant.
void criterion_3() {
    std::mt19937_64 rng(3001);
    int bad = 0;
    for (int it = 0; it < 500; ++it) {
        std::size_t n = 6 + rng() % 4;
        std::size_t p = 1 + rng() % 3;
        std::size_t q = 1 + rng() % 3;
        LinearMatroid m = uniform_matroid(n, p + q);
        const Matrix& a = m.repr();
        const PrimeField& f = a.field();
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::size_t> s(perm.begin(), perm.begin() + p);
        std::vector<std::size_t> y(perm.begin() + p, perm.begin() + p + q);
        std::sort(s.begin(), s.end());
        std::sort(y.begin(), y.end());
        auto ws = wedge_vector(a, s);
        auto wy = wedge_vector(a, y);
        std::vector<std::size_t> su_y = s;
        su_y.insert(su_y.end(), y.begin(), y.end());
        std::sort(su_y.begin(), su_y.end());
        uint64_t sum_j = 0;
        for (auto e : s)
            sum_j += std::size_t(std::lower_bound(su_y.begin(), su_y.end(), e) -
                                 su_y.begin());
        uint64_t acc = 0;
        for (const auto& i : subsets_colex(p + q, p)) {
            std::vector<std::size_t> ibar;
            for (std::size_t r = 0; r < p + q; ++r)
                if (!std::binary_search(i.begin(), i.end(), r)) ibar.push_back(r);
            uint64_t sum_i = std::accumulate(i.begin(), i.end(), uint64_t(0));
            uint64_t term = f.mul(ws[colex_rank(i)], wy[colex_rank(ibar)]);
            acc = (sum_i + sum_j) % 2 == 0 ? f.add(acc, term) : f.sub(acc, term);
        }
        std::vector<std::size_t> all_rows(p + q);
        std::iota(all_rows.begin(), all_rows.end(), 0);
        if (acc != minor_det(a, all_rows, su_y)) ++bad;
    }
    report(3, bad == 0,
           "500 signed minor expansions equal the full determinant (" +
               std::to_string(bad) + " mismatches)");
}

// Criterion 4: transitivity, union, and product composition of reductions.
void criterion_4() {
    std::mt19937_64 rng(4001);
    int bad = 0;
    for (int it = 0; it < 100; ++it) { // transitivity
        LinearMatroid m = uniform_matroid(8, 4);
        WeightedSetFamily s(8, 2);
        for (const auto& sub : subsets_colex(8, 2)) {
            BitVec b(8);
            for (auto e : sub) b.set(e);
            s.add(b, rng() % 100);
        }
        auto r1 = rep_linear(m, s, 2, Sense::Min);
        auto r2 = rep_linear(m, r1, 2, Sense::Min);
        if (oracle::brute_rep_check(m, s, r2, 2, Sense::Min)) ++bad;
    }
    for (int it = 0; it < 100; ++it) { // union
        LinearMatroid m = uniform_matroid(8, 3);
        WeightedSetFamily s1(8, 2), s2(8, 2);
        for (int i = 0; i < 10; ++i) {
            std::size_t x = rng() % 8, y = rng() % 8;
            if (x == y) continue;
            BitVec b(8);
            b.set(x);
            b.set(y);
            (i % 2 ? s1 : s2).add(b, rng() % 50);
        }
        auto r1 = rep_linear(m, s1, 1, Sense::Min);
        auto r2 = rep_linear(m, s2, 1, Sense::Min);
        WeightedSetFamily s(8, 2), r(8, 2);
        for (std::size_t i = 0; i < s1.size(); ++i) s.add(s1.set(i), s1.weight(i));
        for (std::size_t i = 0; i < s2.size(); ++i) s.add(s2.set(i), s2.weight(i));
        for (std::size_t i = 0; i < r1.size(); ++i) r.add(r1.set(i), r1.weight(i));
        for (std::size_t i = 0; i < r2.size(); ++i) r.add(r2.set(i), r2.weight(i));
        if (oracle::brute_rep_check(m, s, r, 1, Sense::Min)) ++bad;
    }
    for (int it = 0; it < 100; ++it) { // product / convolution
        std::size_t k = 4;
        LinearMatroid m = uniform_matroid(8, k);
        WeightedSetFamily s1(8, 1), s2(8, 1);
        for (int i = 0; i < 6; ++i) {
            BitVec a(8), b(8);
            a.set(rng() % 8);
            b.set(rng() % 8);
            s1.add(a, rng() % 20);
            s2.add(b, rng() % 20);
        }
        auto r1 = rep_linear(m, s1, k - 1, Sense::Min);
        auto r2 = rep_linear(m, s2, k - 1, Sense::Min);
        auto full = family_product(s1, s2);
        auto red = family_product(r1, r2);
        if (oracle::brute_rep_check(m, full, red, k - 2, Sense::Min)) ++bad;
    }
    report(4, bad == 0,
           "composition laws hold on 100 random instances each (" + std::to_string(bad) +
               " violations)");
}

// Criterion 5: separating-collection properties (a) and (b).
void criterion_5() {
    int bad_a = 0, bad_b = 0;
    for (std::size_t p = 1; p <= 5; ++p)
        for (std::size_t q = 1; p + q <= 6; ++q)
            for (std::size_t n = p + q; n <= 12; ++n) {
                SepConfig cfg;
                cfg.seed = 100 * n + 10 * p + q;
                auto col = build_separating_collection(n, p, q, cfg);
                auto members = col->members();
                auto as = subsets_colex(n, p);
                for (const auto& av : as) {
                    BitVec a(n);
                    for (auto e : av) a.set(e);
                    auto chi = col->query(a);
                    for (const auto& f : chi)
                        if (!a.subset_of(f)) ++bad_a;
                    std::vector<std::size_t> rest;
                    for (std::size_t v = 0; v < n; ++v)
                        if (!a.test(v)) rest.push_back(v);
                    for (const auto& bv : subsets_colex(rest.size(), q)) {
                        BitVec b(n);
                        for (auto i : bv) b.set(rest[i]);
                        bool sep = false;
                        for (const auto& f : chi)
                            if (!f.intersects(b)) { sep = true; break; }
                        if (!sep) ++bad_b;
                    }
                }
            }
    // large universe, sampled
    SepConfig big;
    big.seed = 5050;
    big.p_conf = 40;
    auto col = build_separating_collection(50, 4, 4, big);
    std::mt19937_64 rng(5051);
    int bad_big = 0;
    for (int it = 0; it < 10000; ++it) {
        std::vector<std::size_t> perm(50);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        BitVec a(50), b(50);
        for (int i = 0; i < 4; ++i) a.set(perm[i]);
        for (int i = 4; i < 8; ++i) b.set(perm[i]);
        bool sep = false;
        for (const auto& f : col->query(a)) {
            if (!a.subset_of(f)) ++bad_a;
            if (!f.intersects(b)) sep = true;
        }
        if (!sep) ++bad_big;
    }
    report(5, bad_a == 0 && bad_b == 0 && bad_big == 0,
           "separation holds: exhaustive small builds (" + std::to_string(bad_b) +
               " misses), n=50 sampled (" + std::to_string(bad_big) + "/10000 misses)");
}

struct BatchResult {
    int disagreements = 0;
    int bad_witnesses = 0;
    int invariant_trips = 0;
    bool monte_carlo = false;
    std::string transcript;
};

// Criterion 6/7/8 workhorse; run twice for the determinism check (criterion 9).
BatchResult run_solver_batches() {
    BatchResult r;
    std::ostringstream out;
    SolverConfig cfg;
    cfg.seed = 777;
    cfg.pipeline = SepPipeline::Complete; // exact collections -> exact answers

    std::mt19937_64 rng(6001);
    for (int it = 0; it < 50; ++it) { // k_path
        std::size_t n = 6 + rng() % 7;
        Graph g = random_graph(n, n + rng() % (2 * n), rng);
        std::size_t k = 2 + rng() % 5;
        SolverStats st;
        auto got = k_path(g, k, cfg, &st);
        r.monte_carlo |= st.monte_carlo;
        if (got.has_value() != oracle::brute_k_path(g, k).has_value()) ++r.disagreements;
        out << "kpath " << it << ' ' << got.has_value();
        if (got) {
            if (!path_valid(g, got->vertices, k)) ++r.bad_witnesses;
            append_set(out, got->vertices);
        } else
            out << '\n';
    }

    rng.seed(6002);
    for (int it = 0; it < 50; ++it) { // long directed cycle
        std::size_t n = 5 + rng() % 5;
        Digraph d = random_digraph(n, n + rng() % (2 * n), rng);
        std::size_t k = 2 + rng() % 4;
        SolverStats st;
        auto got = long_directed_cycle(d, k, cfg, &st);
        r.monte_carlo |= st.monte_carlo;
        if (got.has_value() != oracle::brute_long_cycle(d, k)) ++r.disagreements;
        out << "cycle " << it << ' ' << got.has_value();
        if (got) {
            if (!cycle_valid(d, *got, k)) ++r.bad_witnesses;
            append_set(out, *got);
        } else
            out << '\n';
    }

    rng.seed(6003);
    int done = 0;
    while (done < 30) { // steiner
        std::size_t n = 5 + rng() % 6;
        auto [g, td] = random_bounded_width(n, 2 + rng() % 2, rng);
        if (g.m() > 20 || g.m() + 1 < n) continue;
        std::size_t nt = 2 + rng() % 3;
        std::vector<std::size_t> terms;
        while (terms.size() < nt) {
            std::size_t t = rng() % n;
            if (std::find(terms.begin(), terms.end(), t) == terms.end())
                terms.push_back(t);
        }
        auto want = oracle::brute_steiner(g, terms);
        if (!want) continue;
        ++done;
        try {
            SolverStats st;
            auto res = steiner_tree(g, terms, td, cfg, &st);
            r.monte_carlo |= st.monte_carlo;
            if (res.weight != *want) ++r.disagreements;
            // witness: given weight, connects the terminals
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
            bool ok = w == res.weight;
            for (auto t : terms) ok &= find(t) == find(terms[0]);
            if (!ok) ++r.bad_witnesses;
            out << "steiner " << done << ' ' << res.weight;
            append_set(out, res.edges);
        } catch (const std::logic_error&) {
            ++r.invariant_trips; // the per-bag 2^|Z| size assertion fired
            ++r.disagreements;
        }
    }

    rng.seed(6004);
    done = 0;
    while (done < 30) { // scss + meg
        std::size_t n = 4 + rng() % 3;
        Digraph d = random_digraph(n, n + rng() % n, rng);
        if (d.m() > 20) continue;
        ++done;
        SolverStats st;
        auto megres = meg(d, false, cfg, &st);
        r.monte_carlo |= st.monte_carlo;
        if (megres.size() != oracle::brute_meg(d)) ++r.disagreements;
        // meg witness: preserved reachability is validated inside meg itself
        out << "meg " << done;
        append_set(out, megres);
        if (scc(d).size() == 1) {
            auto s = min_scss(d, cfg, &st);
            if (s.size() != oracle::brute_scss(d)) ++r.disagreements;
            out << "scss " << done;
            append_set(out, s);
        }
    }

    rng.seed(6005);
    for (int it = 0; it < 30; ++it) { // k_tree
        std::size_t n = 6 + rng() % 5;
        std::size_t k = 3 + rng() % 4;
        Graph g = random_graph(n, n + rng() % n, rng);
        Graph t = random_tree(k, rng);
        SolverStats st;
        auto got = k_tree(g, t, cfg, &st);
        r.monte_carlo |= st.monte_carlo;
        if (got.has_value() != oracle::brute_subgraph_iso(g, t)) ++r.disagreements;
        out << "ktree " << it << ' ' << got.has_value();
        if (got) {
            std::vector<char> used(g.n(), 0);
            bool ok = true;
            for (auto h : *got) {
                if (used[h]) ok = false;
                used[h] = 1;
            }
            for (const auto& e : t.edges()) ok &= g.has_edge((*got)[e.u], (*got)[e.v]);
            if (!ok) ++r.bad_witnesses;
            append_set(out, *got);
        } else
            out << '\n';
    }

    r.transcript = out.str();
    return r;
}

// Criterion 10: large k_path run, reported but never gating.
void criterion_10() {
    std::mt19937_64 rng(10001);
    Graph g = random_graph(200, 800, rng);
    SolverConfig cfg;
    cfg.seed = 99;
    SolverStats st;
    auto t0 = std::chrono::steady_clock::now();
    auto got = k_path(g, 8, cfg, &st);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::size_t max_fam = 0;
    bool shortcut = false;
    for (const auto& [what, sz] : st.family_sizes) {
        if (what == "dfs shortcut") shortcut = true;
        max_fam = std::max(max_fam, sz);
    }
    if (shortcut) {
        std::printf("criterion 10: REPORT  k_path(k=8, n=200, m=800) -> %s in %lld ms "
                    "(depth-first shortcut answered before the table was built)\n",
                    got ? "YES" : "NO", static_cast<long long>(ms));
        // exercise the representative-family table anyway and report its sizes
        Digraph d(g.n());
        for (const auto& e : g.edges()) {
            d.add_arc(e.u, e.v, e.w);
            d.add_arc(e.v, e.u, e.w);
        }
        SolverStats st2;
        auto t1 = std::chrono::steady_clock::now();
        path_families(d, 0, 6, 6, cfg, &st2);
        auto ms2 = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t1)
                       .count();
        std::size_t fam2 = 0;
        for (const auto& [what, sz] : st2.family_sizes) fam2 = std::max(fam2, sz);
        std::printf("criterion 10: REPORT  6-level table from one source in %lld ms, "
                    "largest per-level total %zu (envelope sum_v C(6,i) per level)\n",
                    static_cast<long long>(ms2), fam2);
    } else {
        std::printf("criterion 10: REPORT  k_path(k=8, n=200, m=800) -> %s in %lld ms, "
                    "largest family %zu (envelope C(9,1..8) <= 126 per vertex)\n",
                    got ? "YES" : "NO", static_cast<long long>(ms), max_fam);
    }
}

} // namespace

int main() {
    criterion_1_2();
    criterion_3();
    criterion_4();
    criterion_5();

    BatchResult a = run_solver_batches();
    BatchResult b = run_solver_batches();
    report(6, a.disagreements == 0 && !a.monte_carlo,
           "solver answers match the reference oracles on every batch (" +
               std::to_string(a.disagreements) + " disagreements, exact collections " +
               (a.monte_carlo ? "NOT " : "") + "used)");
    report(7, a.bad_witnesses == 0,
           "every YES answer carries a validated witness (" +
               std::to_string(a.bad_witnesses) + " invalid)");
    report(8, a.invariant_trips == 0,
           "per-bag family size bound 2^|Z| held throughout the Steiner batch (" +
               std::to_string(a.invariant_trips) + " trips)");
    report(9, a.transcript == b.transcript,
           "two identically seeded runs produced byte-identical outputs");

    criterion_10();
    return failures ? 1 : 0;
}
