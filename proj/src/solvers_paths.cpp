#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "repfam/solvers.hpp"

namespace repfam {

namespace {

BitVec order_to_set(std::size_t n, const std::vector<std::size_t>& order) {
    BitVec b(n);
    for (auto v : order) b.set(v);
    return b;
}

// collection cache shared across DP cells of one run
struct CollectionCache {
    const SolverConfig* config;
    SolverStats* stats;
    std::map<std::pair<std::size_t, std::size_t>, SepPtr> by_pq; // (p,q) -> collection
    std::size_t n;

    const SeparatingCollection& get(std::size_t p, std::size_t q) {
        auto key = std::make_pair(p, q);
        auto it = by_pq.find(key);
        if (it == by_pq.end()) {
            SepConfig sc{config->seed, config->p_conf, config->pipeline, 200000};
            auto c = build_separating_collection(n, p, q, sc);
            if (stats && !c->verified) stats->monte_carlo = true;
            it = by_pq.emplace(key, std::move(c)).first;
        }
        return *it->second;
    }
};

// Reduce a cell: keep a (budget - i)-representative subset of the entries.
std::vector<PathEntry> reduce_cell(std::vector<PathEntry> entries, std::size_t n,
                                   std::size_t i, std::size_t budget,
                                   CollectionCache& cache) {
    if (entries.empty()) return entries;
    std::size_t q = budget > i ? budget - i : 0;
    // collapse duplicate vertex sets, keeping the cheaper path
    std::map<BitVec, std::size_t> by_set;
    std::vector<PathEntry> uniq;
    for (auto& e : entries) {
        BitVec s = order_to_set(n, e.order);
        auto it = by_set.find(s);
        if (it == by_set.end()) {
            by_set.emplace(std::move(s), uniq.size());
            uniq.push_back(std::move(e));
        } else if (e.cost < uniq[it->second].cost) {
            uniq[it->second] = std::move(e);
        }
    }
    if (q == 0) {
        // only the cheapest survives
        std::size_t best = 0;
        for (std::size_t j = 1; j < uniq.size(); ++j)
            if (uniq[j].cost < uniq[best].cost) best = j;
        return {uniq[best]};
    }
    WeightedSetFamily fam(n, i);
    std::vector<std::size_t> owner; // family index -> uniq index
    for (std::size_t j = 0; j < uniq.size(); ++j) {
        std::size_t idx = fam.add(order_to_set(n, uniq[j].order), uniq[j].cost);
        if (idx == owner.size()) owner.push_back(j);
    }
    WeightedSetFamily kept = rep_uniform(fam, q, Sense::Min, cache.get(i, q));
    std::vector<PathEntry> out;
    out.reserve(kept.size());
    for (std::size_t j = 0; j < kept.size(); ++j) {
        // find the uniq entry matching the surviving set
        for (std::size_t u = 0; u < uniq.size(); ++u) {
            if (order_to_set(n, uniq[u].order) == kept.set(j)) {
                out.push_back(uniq[u]);
                break;
            }
        }
    }
    return out;
}

} // namespace

PathFamilyTable path_families(const Digraph& d, std::size_t source, std::size_t budget,
                              std::size_t depth, const SolverConfig& config,
                              SolverStats* stats) {
    std::size_t n = d.n();
    if (source >= n) throw std::invalid_argument("source out of range");
    if (depth > budget || budget > n)
        throw std::invalid_argument("path_families requires depth <= budget <= n");
    PathFamilyTable t;
    t.source = source;
    t.table.assign(depth + 1, std::vector<std::vector<PathEntry>>(n));
    if (depth == 0) return t;
    CollectionCache cache{&config, stats, {}, n};
    t.table[1][source].push_back({{source}, 0});
    for (std::size_t i = 1; i < depth; ++i) {
        std::size_t total = 0;
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<PathEntry> cand;
            for (auto [w, ai] : d.in(v)) {
                for (const auto& e : t.table[i][w]) {
                    if (std::find(e.order.begin(), e.order.end(), v) != e.order.end())
                        continue;
                    PathEntry ne = e;
                    ne.order.push_back(v);
                    ne.cost = checked_weight_sum(ne.cost, d.arc(ai).w);
                    cand.push_back(std::move(ne));
                }
            }
            if (cand.empty()) continue;
            t.table[i + 1][v] = reduce_cell(std::move(cand), n, i + 1, budget, cache);
            total += t.table[i + 1][v].size();
        }
        if (stats) stats->record("paths/size " + std::to_string(i + 1), total);
    }
    return t;
}

namespace {

// G plus a universal source s (vertex id n) with zero-cost arcs s -> v.
Digraph with_universal_source(const Graph& g) {
    Digraph d(g.n() + 1);
    for (const auto& e : g.edges()) {
        d.add_arc(e.u, e.v, e.w);
        d.add_arc(e.v, e.u, e.w);
    }
    for (std::size_t v = 0; v < g.n(); ++v) d.add_arc(g.n(), v, 0);
    return d;
}

std::optional<PathResult> best_path_at(const PathFamilyTable& t, std::size_t level,
                                       std::size_t skip_first) {
    std::optional<PathResult> best;
    if (level >= t.table.size()) return best;
    for (const auto& cell : t.table[level])
        for (const auto& e : cell) {
            if (!best || e.cost < best->cost) {
                PathResult r;
                r.vertices.assign(e.order.begin() + skip_first, e.order.end());
                r.cost = e.cost;
                best = std::move(r);
            }
        }
    return best;
}

} // namespace

std::optional<PathResult> k_path(const Graph& g, std::size_t k, const SolverConfig& config,
                                 SolverStats* stats) {
    if (k < 1) throw std::invalid_argument("k_path requires k >= 1");
    if (k + 1 > g.n()) return std::nullopt;
    DfsResult dfs = dfs_path_or_shallow(g, k);
    if (dfs.path) {
        PathResult r;
        r.vertices = *dfs.path;
        for (std::size_t i = 0; i + 1 < r.vertices.size(); ++i) {
            auto e = g.find_edge(r.vertices[i], r.vertices[i + 1]);
            r.cost = checked_weight_sum(r.cost, g.edge(*e).w);
        }
        if (stats) stats->record("dfs shortcut", 1);
        return r;
    }
    // shallow DFS forest: |E| <= k * n
    if (g.m() > k * g.n()) throw std::logic_error("shallow DFS bound violated");
    Digraph d = with_universal_source(g);
    PathFamilyTable t = path_families(d, g.n(), k + 2, k + 2, config, stats);
    return best_path_at(t, k + 2, 1);
}

std::optional<PathResult> short_cheap_tour(const Graph& g, std::size_t k,
                                           const SolverConfig& config, SolverStats* stats,
                                           std::size_t k_max) {
    if (k < 1) throw std::invalid_argument("short_cheap_tour requires k >= 1");
    if (k_max == 0) k_max = k;
    if (k_max < k) throw std::invalid_argument("k_max below k");
    k_max = std::min(k_max, g.n() >= 1 ? g.n() - 1 : 0);
    if (k + 1 > g.n()) return std::nullopt;
    Digraph d = with_universal_source(g);
    PathFamilyTable t = path_families(d, g.n(), k_max + 2, k_max + 2, config, stats);
    std::optional<PathResult> best;
    for (std::size_t len = k; len <= k_max; ++len) {
        auto r = best_path_at(t, len + 2, 1);
        if (r && (!best || r->cost < best->cost)) best = r;
    }
    return best;
}

std::optional<std::vector<std::size_t>> long_directed_cycle(const Digraph& d, std::size_t k,
                                                            const SolverConfig& config,
                                                            SolverStats* stats) {
    if (k < 1) throw std::invalid_argument("long_directed_cycle requires k >= 1");
    std::size_t n = d.n();
    std::size_t kk = std::max<std::size_t>(k, 2);
    if (kk > n) return std::nullopt;
    std::size_t budget = std::min(2 * kk, n);
    for (std::size_t u = 0; u < n; ++u) {
        PathFamilyTable t = path_families(d, u, budget, kk, config, stats);
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u) continue;
            for (const auto& e : t.table[kk][v]) {
                // BFS v -> u through vertices outside the stored path
                BitVec blocked = BitVec(n);
                for (auto x : e.order) blocked.set(x);
                blocked.reset(u);
                std::vector<int> prev(n, -1);
                std::deque<std::size_t> queue{v};
                std::vector<char> seen(n, 0);
                seen[v] = 1;
                bool hit = false;
                while (!queue.empty() && !hit) {
                    std::size_t x = queue.front();
                    queue.pop_front();
                    for (auto [y, ai] : d.out(x)) {
                        (void)ai;
                        if (seen[y] || blocked.test(y)) continue;
                        seen[y] = 1;
                        prev[y] = int(x);
                        if (y == u) {
                            hit = true;
                            break;
                        }
                        queue.push_back(y);
                    }
                }
                if (!hit) continue;
                std::vector<std::size_t> back;
                for (std::size_t x = u; x != v; x = std::size_t(prev[x])) back.push_back(x);
                std::reverse(back.begin(), back.end());
                std::vector<std::size_t> cycle = e.order; // u ... v
                cycle.insert(cycle.end(), back.begin(), back.end() - 1); // interior + stops before u
                if (cycle.size() < k) continue;
                return cycle;
            }
        }
    }
    return std::nullopt;
}

} // namespace repfam
