#include <algorithm>
#include <functional>
#include <stdexcept>

#include "repfam/oracle.hpp"

namespace repfam::oracle {

namespace {

void refuse(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("oracle size refusal: ") + what);
}

BitVec mask_to_set(std::size_t n, uint32_t mask) {
    BitVec b(n);
    for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1u) b.set(i);
    return b;
}

template <typename IndepFn>
std::optional<RepCounterexample> rep_check_impl(std::size_t n, IndepFn indep,
                                                const WeightedSetFamily& s,
                                                const WeightedSetFamily& shat,
                                                std::size_t q, Sense sense) {
    refuse(n <= 14, "rep check universe > 14");
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::size_t(__builtin_popcount(mask)) > q) continue;
        BitVec y = mask_to_set(n, mask);
        bool any = false;
        uint64_t best = 0;
        std::size_t best_idx = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.set(i).intersects(y)) continue;
            if (!indep(s.set(i) | y)) continue;
            uint64_t w = s.weight(i);
            bool better = sense == Sense::Min ? w < best : w > best;
            if (!any || better) {
                best = w;
                best_idx = i;
            }
            any = true;
        }
        if (!any) continue;
        bool covered = false;
        for (std::size_t i = 0; i < shat.size() && !covered; ++i) {
            if (shat.set(i).intersects(y)) continue;
            if (!indep(shat.set(i) | y)) continue;
            uint64_t w = shat.weight(i);
            covered = sense == Sense::Min ? w <= best : w >= best;
        }
        if (!covered) return RepCounterexample{y, best_idx};
    }
    return std::nullopt;
}

} // namespace

std::optional<RepCounterexample> brute_rep_check(const LinearMatroid& m,
                                                 const WeightedSetFamily& s,
                                                 const WeightedSetFamily& shat,
                                                 std::size_t q, Sense sense) {
    auto indep = [&](const BitVec& x) { return m.is_independent(x.elements()); };
    return rep_check_impl(s.universe(), indep, s, shat, q, sense);
}

std::optional<RepCounterexample> brute_rep_check_uniform(std::size_t k,
                                                         const WeightedSetFamily& s,
                                                         const WeightedSetFamily& shat,
                                                         std::size_t q, Sense sense) {
    auto indep = [&](const BitVec& x) { return x.count() <= k; };
    return rep_check_impl(s.universe(), indep, s, shat, q, sense);
}

std::optional<std::vector<std::size_t>> brute_k_path(const Graph& g, std::size_t k) {
    refuse(g.n() <= 12, "k-path n > 12");
    std::vector<std::size_t> path;
    std::vector<char> used(g.n(), 0);
    std::optional<std::vector<std::size_t>> found;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (found) return;
        path.push_back(v);
        used[v] = 1;
        if (path.size() >= k + 1) {
            found = path;
        } else {
            for (auto [w, ei] : g.adj(v)) {
                (void)ei;
                if (!used[w]) rec(w);
            }
        }
        used[v] = 0;
        path.pop_back();
    };
    for (std::size_t v = 0; v < g.n() && !found; ++v) rec(v);
    return found;
}

std::optional<uint64_t> brute_cheap_tour(const Graph& g, std::size_t k, std::size_t k_max) {
    refuse(g.n() <= 12, "cheap tour n > 12");
    std::optional<uint64_t> best;
    std::vector<char> used(g.n(), 0);
    std::function<void(std::size_t, std::size_t, uint64_t)> rec =
        [&](std::size_t v, std::size_t edges, uint64_t cost) {
            if (edges >= k && (!best || cost < *best)) best = cost;
            if (edges >= k_max) return;
            used[v] = 1;
            for (auto [w, ei] : g.adj(v))
                if (!used[w]) rec(w, edges + 1, cost + g.edge(ei).w);
            used[v] = 0;
        };
    for (std::size_t v = 0; v < g.n(); ++v) rec(v, 0, 0);
    return best;
}

bool brute_long_cycle(const Digraph& d, std::size_t k) {
    refuse(d.n() <= 12, "long cycle n > 12");
    // enumerate simple cycles anchored at their minimum vertex
    std::vector<char> used(d.n(), 0);
    std::function<bool(std::size_t, std::size_t, std::size_t)> rec =
        [&](std::size_t start, std::size_t v, std::size_t len) -> bool {
        for (auto [w, ai] : d.out(v)) {
            (void)ai;
            if (w == start && len >= k) return true;
            if (w > start && !used[w]) {
                used[w] = 1;
                bool hit = rec(start, w, len + 1);
                used[w] = 0;
                if (hit) return true;
            }
        }
        return false;
    };
    for (std::size_t v = 0; v < d.n(); ++v)
        if (rec(v, v, 1)) return true;
    return false;
}

std::optional<uint64_t> brute_steiner(const Graph& g,
                                      const std::vector<std::size_t>& terminals) {
    refuse(g.n() <= 10, "steiner n > 10");
    refuse(g.m() <= 20, "steiner m > 20");
    if (terminals.empty()) throw std::invalid_argument("no terminals");
    if (terminals.size() == 1) return 0;
    std::optional<uint64_t> best;
    for (uint32_t mask = 0; mask < (1u << g.m()); ++mask) {
        uint64_t w = 0;
        std::vector<std::size_t> parent(g.n());
        for (std::size_t v = 0; v < g.n(); ++v) parent[v] = v;
        std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
            return parent[v] == v ? v : parent[v] = find(parent[v]);
        };
        for (std::size_t e = 0; e < g.m(); ++e)
            if (mask >> e & 1u) {
                w += g.edge(e).w;
                parent[find(g.edge(e).u)] = find(g.edge(e).v);
            }
        bool ok = true;
        for (auto t : terminals) ok &= find(t) == find(terminals[0]);
        if (ok && (!best || w < *best)) best = w;
    }
    return best;
}

namespace {

bool strong_on(const Digraph& d, uint32_t arc_mask) {
    std::size_t n = d.n();
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
    for (std::size_t v = 0; v < n; ++v) r[v][v] = 1;
    for (std::size_t a = 0; a < d.m(); ++a)
        if (arc_mask >> a & 1u) r[d.arc(a).u][d.arc(a).v] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!r[i][j]) return false;
    return true;
}

std::vector<std::vector<char>> closure_on(const Digraph& d, uint32_t arc_mask) {
    std::size_t n = d.n();
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
    for (std::size_t v = 0; v < n; ++v) r[v][v] = 1;
    for (std::size_t a = 0; a < d.m(); ++a)
        if (arc_mask >> a & 1u) r[d.arc(a).u][d.arc(a).v] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = 1;
    return r;
}

} // namespace

std::size_t brute_scss(const Digraph& d) {
    refuse(d.n() <= 6, "scss n > 6");
    refuse(d.m() <= 20, "scss m > 20");
    if (!strong_on(d, d.m() >= 32 ? ~0u : (1u << d.m()) - 1))
        throw std::invalid_argument("digraph is not strongly connected");
    std::size_t best = d.m();
    for (uint32_t mask = 0; mask < (1u << d.m()); ++mask) {
        std::size_t cnt = std::size_t(__builtin_popcount(mask));
        if (cnt >= best) continue;
        if (strong_on(d, mask)) best = cnt;
    }
    return best;
}

uint64_t brute_meg(const Digraph& d, bool weighted) {
    refuse(d.n() <= 6, "meg n > 6");
    refuse(d.m() <= 20, "meg m > 20");
    auto want = closure_on(d, d.m() >= 32 ? ~0u : (1u << d.m()) - 1);
    uint64_t best = UINT64_MAX;
    for (uint32_t mask = 0; mask < (1u << d.m()); ++mask) {
        uint64_t w = 0;
        for (std::size_t a = 0; a < d.m(); ++a)
            if (mask >> a & 1u) w += weighted ? d.arc(a).w : 1;
        if (w >= best) continue;
        if (closure_on(d, mask) == want) best = w;
    }
    return best;
}

TreeDecomposition trivial_tree_decomposition(const Graph& g) {
    refuse(g.n() <= 12, "trivial decomposition n > 12");
    TreeDecomposition td;
    td.n = g.n();
    std::vector<std::size_t> bag(g.n());
    for (std::size_t v = 0; v < g.n(); ++v) bag[v] = v;
    td.bags.push_back(bag);
    return td;
}

bool brute_subgraph_iso(const Graph& host, const Graph& pattern) {
    refuse(host.n() <= 12, "subgraph iso n > 12");
    if (pattern.n() > host.n()) return false;
    std::vector<std::size_t> img(pattern.n(), SIZE_MAX);
    std::vector<char> used(host.n(), 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t v) -> bool {
        if (v == pattern.n()) return true;
        for (std::size_t h = 0; h < host.n(); ++h) {
            if (used[h]) continue;
            bool ok = true;
            for (auto [w, ei] : pattern.adj(v)) {
                (void)ei;
                if (img[w] != SIZE_MAX && !host.has_edge(h, img[w])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            img[v] = h;
            used[h] = 1;
            if (rec(v + 1)) return true;
            used[h] = 0;
            img[v] = SIZE_MAX;
        }
        return false;
    };
    return rec(0);
}

} // namespace repfam::oracle
