#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "repfam/solvers.hpp"

namespace repfam {

namespace {

struct TreeCtx {
    const Graph* g;
    const Graph* tree;
    std::size_t n; // host size
    std::size_t k; // tree size
    std::size_t c; // divide constant
    const SolverConfig* config;
    SolverStats* stats;
    std::map<std::pair<std::size_t, std::size_t>, SepPtr> collections;

    // memo per ordered pair (x, y): fam[u][v] = image sets of the component
    // strictly between x and y, assuming x -> u and y -> v; star[u] = the same
    // with the y image folded into the set.
    struct PairFam {
        std::size_t comp_size = 0;
        std::vector<std::vector<std::vector<BitVec>>> uv;
        std::vector<std::vector<BitVec>> star;
    };
    std::map<std::pair<std::size_t, std::size_t>, PairFam> memo;

    const SeparatingCollection& collection(std::size_t p, std::size_t q) {
        auto key = std::make_pair(p, q);
        auto it = collections.find(key);
        if (it == collections.end()) {
            SepConfig sc{config->seed, config->p_conf, config->pipeline, 200000};
            auto col = build_separating_collection(n, p, q, sc);
            if (stats && !col->verified) stats->monte_carlo = true;
            it = collections.emplace(key, std::move(col)).first;
        }
        return *it->second;
    }

    // keep a (k - p)-representative subset, unweighted
    std::vector<BitVec> reduce(std::vector<BitVec> sets) {
        std::sort(sets.begin(), sets.end());
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        if (sets.empty()) return sets;
        std::size_t p = sets.front().count();
        std::size_t q = k - p;
        if (q == 0 || sets.size() <= 1) return sets;
        WeightedSetFamily fam(n, p);
        for (const auto& s : sets) fam.add(s, 0);
        WeightedSetFamily rep = rep_uniform(fam, q, Sense::Min, collection(p, q));
        std::vector<BitVec> out;
        for (std::size_t i = 0; i < rep.size(); ++i) out.push_back(rep.set(i));
        std::sort(out.begin(), out.end());
        return out;
    }
};

// Rooted view of the subtree induced by comp + {x, y}.
struct SubTree {
    std::vector<std::size_t> verts;           // sorted vertex ids (tree side)
    std::vector<char> in;                     // membership over tree vertices
    std::vector<std::vector<std::size_t>> adj; // restricted adjacency, by tree id
    std::vector<std::size_t> parent, depth;    // rooted at x, by tree id
    std::size_t root;
};

SubTree induced_subtree(const TreeCtx& ctx, const std::vector<std::size_t>& comp,
                        std::size_t x, std::size_t y) {
    SubTree t;
    t.in.assign(ctx.k, 0);
    for (auto v : comp) t.in[v] = 1;
    t.in[x] = t.in[y] = 1;
    t.adj.assign(ctx.k, {});
    for (std::size_t v = 0; v < ctx.k; ++v) {
        if (!t.in[v]) continue;
        t.verts.push_back(v);
        for (auto [w, ei] : ctx.tree->adj(v)) {
            (void)ei;
            if (t.in[w]) t.adj[v].push_back(w);
        }
    }
    t.parent.assign(ctx.k, SIZE_MAX);
    t.depth.assign(ctx.k, 0);
    t.root = x;
    std::vector<std::size_t> stack{x};
    t.parent[x] = x;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (auto w : t.adj[v])
            if (t.parent[w] == SIZE_MAX) {
                t.parent[w] = v;
                t.depth[w] = t.depth[v] + 1;
                stack.push_back(w);
            }
    }
    return t;
}

std::size_t tree_lca(const SubTree& t, std::size_t a, std::size_t b) {
    while (a != b) {
        if (t.depth[a] < t.depth[b])
            b = t.parent[b];
        else
            a = t.parent[a];
    }
    return a;
}

// Pick separator vertices: repeatedly take the lowermost vertex whose live
// subtree holds at least a 1/c fraction, then close under lowest common
// ancestors so every remaining component has at most two boundary vertices.
std::vector<std::size_t> divide_tree(const SubTree& t, std::size_t x, std::size_t y,
                                     std::size_t c) {
    std::size_t total = t.verts.size();
    std::vector<char> alive(t.in.begin(), t.in.end());
    std::vector<std::size_t> w1;
    for (;;) {
        // live subtree sizes, children processed before parents via depth order
        std::vector<std::size_t> order = t.verts;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return t.depth[a] > t.depth[b];
        });
        std::map<std::size_t, std::size_t> sz;
        for (auto v : order) {
            if (!alive[v]) continue;
            std::size_t s = 1;
            for (auto w : t.adj[v])
                if (t.parent[w] == v && alive[w]) s += sz[w];
            sz[v] = s;
        }
        std::size_t picked = SIZE_MAX;
        for (auto v : order) {
            if (!alive[v]) continue;
            if (sz[v] * c >= total) {
                picked = v;
                break; // deepest first; ties resolved by vertex id via sort stability
            }
        }
        if (picked == SIZE_MAX) break;
        w1.push_back(picked);
        // remove the picked subtree from the live tree
        std::vector<std::size_t> stack{picked};
        alive[picked] = 0;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (auto w : t.adj[v])
                if (t.parent[w] == v && alive[w]) {
                    alive[w] = 0;
                    stack.push_back(w);
                }
        }
        bool any_alive = false;
        for (auto v : t.verts) any_alive |= alive[v] != 0;
        if (!any_alive) break;
    }
    w1.push_back(x);
    w1.push_back(y);
    std::sort(w1.begin(), w1.end());
    w1.erase(std::unique(w1.begin(), w1.end()), w1.end());
    // close under pairwise lca
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t i = 0; i < w1.size() && !grew; ++i)
            for (std::size_t j = i + 1; j < w1.size() && !grew; ++j) {
                std::size_t l = tree_lca(t, w1[i], w1[j]);
                if (!std::binary_search(w1.begin(), w1.end(), l)) {
                    w1.insert(std::lower_bound(w1.begin(), w1.end(), l), l);
                    grew = true;
                }
            }
    }
    return w1;
}

const TreeCtx::PairFam& compute_pair(TreeCtx& ctx, std::size_t x, std::size_t y);

// all embeddings of the interior component of (x, y), computed by brute force
std::vector<std::vector<std::vector<BitVec>>> enumerate_small(
    TreeCtx& ctx, const SubTree& t, const std::vector<std::size_t>& comp, std::size_t x,
    std::size_t y) {
    std::size_t n = ctx.n;
    std::vector<std::vector<std::vector<BitVec>>> uv(
        n, std::vector<std::vector<BitVec>>(n));
    std::vector<std::size_t> host(ctx.k, SIZE_MAX);
    std::vector<char> used(n, 0);
    auto edges_ok = [&](std::size_t v) {
        for (auto w : t.adj[v])
            if (host[w] != SIZE_MAX && !ctx.g->has_edge(host[v], host[w])) return false;
        return true;
    };
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == comp.size()) {
            BitVec s(n);
            for (auto cv : comp) s.set(host[cv]);
            uv[host[x]][host[y]].push_back(s);
            return;
        }
        std::size_t v = comp[idx];
        for (std::size_t hv = 0; hv < n; ++hv) {
            if (used[hv]) continue;
            host[v] = hv;
            if (edges_ok(v)) {
                used[hv] = 1;
                self(self, idx + 1);
                used[hv] = 0;
            }
            host[v] = SIZE_MAX;
        }
    };
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u) continue;
            host[x] = u;
            host[y] = v;
            used[u] = used[v] = 1;
            if (edges_ok(x) && edges_ok(y)) rec(rec, 0);
            used[u] = used[v] = 0;
            host[x] = host[y] = SIZE_MAX;
            std::sort(uv[u][v].begin(), uv[u][v].end());
            uv[u][v].erase(std::unique(uv[u][v].begin(), uv[u][v].end()),
                           uv[u][v].end());
            uv[u][v] = ctx.reduce(std::move(uv[u][v]));
        }
    }
    return uv;
}

struct Factor {
    enum Kind { WEdge, Pair, Star } kind;
    std::size_t x, y; // boundary vertices (tree side); Star: y is the chosen leaf
};

const TreeCtx::PairFam& compute_pair(TreeCtx& ctx, std::size_t x, std::size_t y) {
    auto key = std::make_pair(x, y);
    auto found = ctx.memo.find(key);
    if (found != ctx.memo.end()) return found->second;

    // interior component of tree - {x, y}: reachable from a neighbor of x
    // towards y without crossing x or y, with neighborhood exactly {x, y}
    std::vector<std::size_t> comp;
    {
        std::vector<int> mark(ctx.k, -1);
        mark[x] = mark[y] = -2;
        int nc = 0;
        std::vector<std::vector<std::size_t>> comps;
        for (std::size_t v = 0; v < ctx.k; ++v) {
            if (mark[v] != -1) continue;
            std::vector<std::size_t> cur, stack{v};
            mark[v] = nc;
            while (!stack.empty()) {
                std::size_t a = stack.back();
                stack.pop_back();
                cur.push_back(a);
                for (auto [b, ei] : ctx.tree->adj(a)) {
                    (void)ei;
                    if (mark[b] == -1) {
                        mark[b] = nc;
                        stack.push_back(b);
                    }
                }
            }
            comps.push_back(std::move(cur));
            ++nc;
        }
        for (auto& cand : comps) {
            bool near_x = false, near_y = false;
            for (auto a : cand)
                for (auto [b, ei] : ctx.tree->adj(a)) {
                    (void)ei;
                    near_x |= b == x;
                    near_y |= b == y;
                }
            if (near_x && near_y) {
                std::sort(cand.begin(), cand.end());
                comp = std::move(cand);
                break;
            }
        }
    }

    TreeCtx::PairFam fam;
    fam.comp_size = comp.size();
    std::size_t n = ctx.n;
    fam.uv.assign(n, std::vector<std::vector<BitVec>>(n));

    if (comp.empty()) {
        if (!ctx.tree->has_edge(x, y))
            throw std::logic_error("pair without interior or adjacency");
        // x and y are adjacent in the tree: the empty embedding iff uv is an edge
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                if (u != v && ctx.g->has_edge(u, v)) fam.uv[u][v].push_back(BitVec(n));
    } else if (comp.size() <= 2) {
        SubTree t = induced_subtree(ctx, comp, x, y);
        fam.uv = enumerate_small(ctx, t, comp, x, y);
    } else {
        SubTree t = induced_subtree(ctx, comp, x, y);
        std::vector<std::size_t> sep = divide_tree(t, x, y, ctx.c);
        std::vector<char> in_sep(ctx.k, 0);
        for (auto v : sep) in_sep[v] = 1;

        // factor list: separator edges, two-boundary components, one-boundary
        // components with a chosen leaf
        std::vector<Factor> factors;
        for (std::size_t i = 0; i < sep.size(); ++i)
            for (auto w : t.adj[sep[i]])
                if (in_sep[w] && sep[i] < w) factors.push_back({Factor::WEdge, sep[i], w});
        {
            std::vector<int> cmark(ctx.k, -1);
            for (auto start : t.verts) {
                if (in_sep[start] || cmark[start] != -1) continue;
                std::vector<std::size_t> cur, stack{start};
                cmark[start] = 0;
                while (!stack.empty()) {
                    std::size_t a = stack.back();
                    stack.pop_back();
                    cur.push_back(a);
                    for (auto b : t.adj[a])
                        if (!in_sep[b] && cmark[b] == -1) {
                            cmark[b] = 0;
                            stack.push_back(b);
                        }
                }
                std::vector<std::size_t> bnd;
                for (auto a : cur)
                    for (auto b : t.adj[a])
                        if (in_sep[b]) bnd.push_back(b);
                std::sort(bnd.begin(), bnd.end());
                bnd.erase(std::unique(bnd.begin(), bnd.end()), bnd.end());
                if (bnd.empty() || bnd.size() > 2)
                    throw std::logic_error("tree divide produced a bad boundary");
                if (bnd.size() == 2) {
                    std::size_t a = bnd[0], b = bnd[1];
                    if (t.depth[a] > t.depth[b]) std::swap(a, b);
                    factors.push_back({Factor::Pair, a, b});
                } else {
                    // choose the lowest-index leaf of the component subtree
                    std::sort(cur.begin(), cur.end());
                    std::size_t leaf = SIZE_MAX;
                    for (auto a : cur)
                        if (t.adj[a].size() <= 1) {
                            leaf = a;
                            break;
                        }
                    if (leaf == SIZE_MAX)
                        throw std::logic_error("component without a tree leaf");
                    factors.push_back({Factor::Star, bnd[0], leaf});
                }
            }
        }
        std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) {
            return std::tie(a.kind, a.x, a.y) < std::tie(b.kind, b.x, b.y);
        });

        // precompute child pair families (strictly smaller interiors)
        for (const auto& f : factors)
            if (f.kind != Factor::WEdge) compute_pair(ctx, f.x, f.y);

        // enumerate injective maps of the separator with x -> u, y -> v fixed
        std::vector<std::size_t> sep_rest;
        for (auto v : sep)
            if (v != x && v != y) sep_rest.push_back(v);
        std::vector<std::size_t> g_of(ctx.k, SIZE_MAX);
        std::vector<char> used(n, 0);
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
                if (u == v) continue;
                g_of[x] = u;
                g_of[y] = v;
                used[u] = used[v] = 1;
                std::vector<BitVec> acc_all;
                auto expand = [&](auto&& self, std::size_t idx) -> void {
                    if (idx < sep_rest.size()) {
                        std::size_t sv = sep_rest[idx];
                        for (std::size_t hv = 0; hv < n; ++hv) {
                            if (used[hv]) continue;
                            g_of[sv] = hv;
                            used[hv] = 1;
                            self(self, idx + 1);
                            used[hv] = 0;
                            g_of[sv] = SIZE_MAX;
                        }
                        return;
                    }
                    // separator edge constraints
                    for (const auto& f : factors)
                        if (f.kind == Factor::WEdge &&
                            !ctx.g->has_edge(g_of[f.x], g_of[f.y]))
                            return;
                    BitVec base(n);
                    for (auto sv : sep) base.set(g_of[sv]);
                    std::vector<BitVec> acc{base};
                    for (const auto& f : factors) {
                        if (f.kind == Factor::WEdge) continue;
                        const auto& pf = ctx.memo.at({f.x, f.y});
                        const std::vector<BitVec>* parts = nullptr;
                        std::vector<BitVec> star_plus;
                        if (f.kind == Factor::Pair) {
                            parts = &pf.uv[g_of[f.x]][g_of[f.y]];
                        } else {
                            parts = &pf.star[g_of[f.x]];
                        }
                        std::vector<BitVec> next;
                        for (const auto& a : acc)
                            for (const auto& p : *parts)
                                if (!a.intersects(p)) next.push_back(a | p);
                        acc = ctx.reduce(std::move(next));
                        if (acc.empty()) return;
                    }
                    for (auto& s : acc) {
                        // drop only the x, y images; separator vertices other
                        // than x, y lie inside the component, so their images stay
                        s.reset(u);
                        s.reset(v);
                        acc_all.push_back(std::move(s));
                    }
                };
                expand(expand, 0);
                used[u] = used[v] = 0;
                g_of[x] = g_of[y] = SIZE_MAX;
                fam.uv[u][v] = ctx.reduce(std::move(acc_all));
            }
        }
    }

    // star families: fold the y image into the set
    fam.star.assign(n, {});
    for (std::size_t u = 0; u < n; ++u) {
        std::vector<BitVec> all;
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u) continue;
            for (const auto& s : fam.uv[u][v]) {
                if (s.test(v)) continue;
                BitVec t2 = s;
                t2.set(v);
                all.push_back(std::move(t2));
            }
        }
        fam.star[u] = ctx.reduce(std::move(all));
    }
    if (ctx.stats) {
        std::size_t total = 0;
        for (const auto& row : fam.uv)
            for (const auto& cell : row) total += cell.size();
        ctx.stats->record("tree pair (" + std::to_string(x) + "," + std::to_string(y) +
                              ") size " + std::to_string(fam.comp_size),
                          total);
    }
    return ctx.memo.emplace(key, std::move(fam)).first->second;
}

// embed the tree into g restricted to hosts, with root -> fixed host
std::optional<std::vector<std::size_t>> embed_witness(const Graph& g, const Graph& tree,
                                                      std::size_t root, std::size_t root_host,
                                                      const BitVec& others) {
    std::size_t k = tree.n();
    std::vector<std::size_t> order{root};
    std::vector<char> seen(k, 0);
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (auto [w, ei] : tree.adj(order[i])) {
            (void)ei;
            if (!seen[w]) {
                seen[w] = 1;
                order.push_back(w);
            }
        }
    std::vector<std::size_t> hosts = others.elements();
    std::vector<std::size_t> witness(k, SIZE_MAX);
    std::vector<char> used(hosts.size(), 0);
    witness[root] = root_host;
    auto host_of = [&](std::size_t tv) { return witness[tv]; };
    auto rec = [&](auto&& self, std::size_t idx) -> bool {
        if (idx == order.size()) return true;
        std::size_t tv = order[idx];
        for (std::size_t hi = 0; hi < hosts.size(); ++hi) {
            if (used[hi]) continue;
            bool ok = true;
            for (auto [w, ei] : tree.adj(tv)) {
                (void)ei;
                if (witness[w] != SIZE_MAX && !g.has_edge(hosts[hi], host_of(w))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            witness[tv] = hosts[hi];
            used[hi] = 1;
            if (self(self, idx + 1)) return true;
            used[hi] = 0;
            witness[tv] = SIZE_MAX;
        }
        return false;
    };
    if (!rec(rec, 1)) return std::nullopt;
    return witness;
}

} // namespace

std::optional<std::vector<std::size_t>> k_tree(const Graph& g, const Graph& tree,
                                               const SolverConfig& config,
                                               SolverStats* stats) {
    std::size_t k = tree.n();
    std::size_t n = g.n();
    if (k == 0) throw std::invalid_argument("pattern tree is empty");
    if (tree.m() + 1 != k) throw std::invalid_argument("pattern is not a tree");
    {
        // connectivity check
        std::vector<char> seen(k, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        std::size_t cnt = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto [w, ei] : tree.adj(v)) {
                (void)ei;
                if (!seen[w]) seen[w] = 1, ++cnt, stack.push_back(w);
            }
        }
        if (cnt != k) throw std::invalid_argument("pattern is not a tree");
    }
    if (k > n) return std::nullopt;
    if (k == 1) {
        if (n == 0) return std::nullopt;
        return std::vector<std::size_t>{0};
    }

    TreeCtx ctx;
    ctx.g = &g;
    ctx.tree = &tree;
    ctx.n = n;
    ctx.k = k;
    ctx.c = std::max<std::size_t>(2, (std::size_t)std::ceil(1.0 / config.epsilon));
    ctx.config = &config;
    ctx.stats = stats;

    // root and secondary anchor: the two lowest-index leaves
    std::size_t r = SIZE_MAX, l0 = SIZE_MAX;
    for (std::size_t v = 0; v < k; ++v)
        if (tree.adj(v).size() == 1) {
            if (r == SIZE_MAX)
                r = v;
            else if (l0 == SIZE_MAX)
                l0 = v;
        }
    if (r == SIZE_MAX || l0 == SIZE_MAX)
        throw std::logic_error("tree with fewer than two leaves");

    const auto& top = compute_pair(ctx, r, l0);
    for (std::size_t u = 0; u < n; ++u) {
        if (top.star[u].empty()) continue;
        for (const auto& s : top.star[u]) {
            if (s.test(u)) continue;
            auto w = embed_witness(g, tree, r, u, s);
            if (w) return w;
        }
    }
    return std::nullopt;
}

} // namespace repfam
