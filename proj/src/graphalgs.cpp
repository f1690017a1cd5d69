#include "repfam/graphalgs.hpp"

#include <algorithm>
#include <stdexcept>

namespace repfam {

std::vector<std::vector<std::size_t>> scc(const Digraph& d) {
    std::size_t n = d.n();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    int counter = 0;

    struct Frame {
        std::size_t v;
        std::size_t ei;
    };
    for (std::size_t s = 0; s < n; ++s) {
        if (index[s] != -1) continue;
        std::vector<Frame> call{{s, 0}};
        index[s] = low[s] = counter++;
        stack.push_back(s);
        on_stack[s] = 1;
        while (!call.empty()) {
            auto& [v, ei] = call.back();
            if (ei < d.out(v).size()) {
                std::size_t w = d.out(v)[ei].first;
                ++ei;
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    std::vector<std::size_t> comp;
                    while (true) {
                        std::size_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
                std::size_t vv = v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[vv]);
            }
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    return comps;
}

DfsResult dfs_path_or_shallow(const Graph& g, std::size_t k) {
    DfsResult res;
    std::size_t n = g.n();
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> path;
    bool found = false;
    auto dfs = [&](auto&& self, std::size_t v) -> void {
        if (found) return;
        seen[v] = 1;
        path.push_back(v);
        if (path.size() >= k + 1) {
            res.path = path;
            found = true;
            path.pop_back();
            return;
        }
        res.depth = std::max(res.depth, path.size() - 1);
        for (auto [w, e] : g.adj(v)) {
            (void)e;
            if (!seen[w]) self(self, w);
            if (found) break;
        }
        path.pop_back();
    };
    for (std::size_t s = 0; s < n && !found; ++s)
        if (!seen[s]) dfs(dfs, s);
    return res;
}

namespace {

constexpr int64_t kInf = INT64_MAX / 4;

struct ArcRec {
    std::size_t tail, head;
    int64_t w;
    std::size_t orig; // original arc index
};

// Recursive Edmonds on an explicit arc list over vertices 0..n-1.
std::optional<std::vector<std::size_t>> edmonds(std::size_t n, std::size_t root,
                                                std::vector<ArcRec> arcs) {
    if (n == 1) return std::vector<std::size_t>{};
    // cheapest incoming arc per non-root vertex; ties broken by arc order
    std::vector<std::size_t> best(n, SIZE_MAX);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const auto& a = arcs[i];
        if (a.head == root || a.tail == a.head) continue;
        if (best[a.head] == SIZE_MAX || a.w < arcs[best[a.head]].w) best[a.head] = i;
    }
    for (std::size_t v = 0; v < n; ++v)
        if (v != root && best[v] == SIZE_MAX) return std::nullopt;

    // look for a cycle among chosen arcs
    std::vector<int> color(n, 0); // 0 fresh, 1 in progress stamp, 2 done
    std::vector<std::size_t> cycle;
    for (std::size_t v0 = 0; v0 < n && cycle.empty(); ++v0) {
        if (color[v0]) continue;
        std::vector<std::size_t> trail;
        std::size_t v = v0;
        while (v != root && color[v] == 0) {
            color[v] = 1;
            trail.push_back(v);
            v = arcs[best[v]].tail;
        }
        if (v != root && color[v] == 1) {
            // found a cycle: suffix of trail starting at v
            auto it = std::find(trail.begin(), trail.end(), v);
            cycle.assign(it, trail.end());
        }
        for (auto u : trail) color[u] = 2;
    }
    if (cycle.empty()) {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < n; ++v)
            if (v != root) out.push_back(arcs[best[v]].orig);
        return out;
    }

    // contract the cycle into a fresh vertex id n (renumbered to n-|C|+... keep simple: id n)
    std::vector<char> in_cycle(n, 0);
    for (auto v : cycle) in_cycle[v] = 1;
    std::size_t cnode = n;
    std::vector<ArcRec> next;
    // remember, per contracted arc, which original arc it stands for
    for (const auto& a : arcs) {
        bool tin = in_cycle[a.tail], hin = in_cycle[a.head];
        if (tin && hin) continue;
        ArcRec b = a;
        if (hin) {
            b.head = cnode;
            b.w = a.w - arcs[best[a.head]].w;
        }
        if (tin) b.tail = cnode;
        next.push_back(b);
    }
    // compress ids: map old ids (minus cycle) plus cnode into 0..m-1
    std::vector<std::size_t> id(n + 1, SIZE_MAX);
    std::size_t m = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (!in_cycle[v]) id[v] = m++;
    id[cnode] = m++;
    for (auto& a : next) {
        a.tail = id[a.tail];
        a.head = id[a.head];
    }
    // keep the original-arc identity through recursion:
    // next[i].orig already names the original arc; we additionally need to know
    // which cycle vertex an arc into the contracted node enters.
    auto sub = edmonds(m, id[root], next);
    if (!sub) return std::nullopt;
    // find the original arc entering the cycle
    std::vector<std::size_t> out = *sub;
    // map original arc index -> head vertex (original numbering) needs caller info;
    // reconstruct from the arcs list we were given
    std::size_t entering_head = SIZE_MAX;
    for (auto oi : out) {
        for (const auto& a : arcs)
            if (a.orig == oi && in_cycle[a.head] && !in_cycle[a.tail]) {
                entering_head = a.head;
                break;
            }
        if (entering_head != SIZE_MAX) break;
    }
    if (entering_head == SIZE_MAX)
        return std::nullopt; // contracted node unreachable; cannot happen if sub spans
    for (auto v : cycle)
        if (v != entering_head) out.push_back(arcs[best[v]].orig);
    return out;
}

} // namespace

std::optional<std::vector<std::size_t>> min_cost_arborescence(
    const Digraph& d, std::size_t root, const std::vector<uint64_t>& weights,
    Branching direction) {
    if (weights.size() != d.m())
        throw std::invalid_argument("one weight per arc required");
    if (root >= d.n()) throw std::invalid_argument("root out of range");
    std::vector<ArcRec> arcs;
    arcs.reserve(d.m());
    for (std::size_t i = 0; i < d.m(); ++i) {
        const auto& a = d.arc(i);
        if (weights[i] > uint64_t(kInf))
            throw std::invalid_argument("arc weight too large");
        if (direction == Branching::Out)
            arcs.push_back({a.u, a.v, int64_t(weights[i]), i});
        else
            arcs.push_back({a.v, a.u, int64_t(weights[i]), i});
    }
    auto res = edmonds(d.n(), root, std::move(arcs));
    if (res) std::sort(res->begin(), res->end());
    return res;
}

} // namespace repfam
