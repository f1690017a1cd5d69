#include <algorithm>
#include <map>
#include <stdexcept>

#include "repfam/matroids.hpp"
#include "repfam/replinear.hpp"
#include "repfam/solvers.hpp"

namespace repfam {

namespace {

struct Member {
    BitVec edges; // over g.m()
    uint64_t weight;
};

// families keyed by the boundary: endpoints of the edge set inside the bag
using State = std::map<BitVec, std::vector<Member>>;

struct Ctx {
    const Graph* g;
    BitVec terminals; // over n
    std::vector<char> is_terminal;
};

BitVec edge_endpoints(const Ctx& c, const BitVec& edges) {
    BitVec v(c.g->n());
    for (auto e : edges.elements()) {
        v.set(c.g->edge(e).u);
        v.set(c.g->edge(e).v);
    }
    return v;
}

std::vector<std::vector<std::size_t>> edge_components(const Ctx& c, const BitVec& edges) {
    std::size_t n = c.g->n();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    BitVec touched(n);
    for (auto e : edges.elements()) {
        const auto& ed = c.g->edge(e);
        touched.set(ed.u);
        touched.set(ed.v);
        parent[find(ed.u)] = find(ed.v);
    }
    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (auto v : touched.elements()) comps[find(v)].push_back(v);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [r, vs] : comps) out.push_back(std::move(vs));
    return out;
}

// valid partial solution w.r.t. subtree vertices and current bag
bool valid_member(const Ctx& c, const BitVec& edges, const BitVec& subtree,
                  const BitVec& bag) {
    BitVec covered = edge_endpoints(c, edges);
    // terminals strictly below the bag must already be covered
    BitVec must = (c.terminals & subtree) - bag;
    if (!must.subset_of(covered)) return false;
    auto comps = edge_components(c, edges);
    bool each_touches_bag = true;
    for (const auto& comp : comps) {
        bool touch = false;
        for (auto v : comp)
            if (bag.test(v)) {
                touch = true;
                break;
            }
        if (!touch) {
            each_touches_bag = false;
            break;
        }
    }
    if (each_touches_bag) return true;
    // otherwise the member must stand alone as a complete solution so far:
    // connected and covering every terminal of the subtree
    if (comps.size() != 1) return false;
    if (!(c.terminals & subtree).subset_of(covered)) return false;
    return true;
}

void insert_member(State& st, const Ctx& c, const BitVec& edges, uint64_t w,
                   const BitVec& bag) {
    BitVec boundary = edge_endpoints(c, edges) & bag;
    auto& fam = st[boundary];
    for (auto& m : fam)
        if (m.edges == edges) {
            m.weight = std::min(m.weight, w);
            return;
        }
    fam.push_back({edges, w});
}

// Shrink one family to a min (|Z|-1-i)-representative set per forest size i,
// using the graphic matroid of the complete graph on the boundary.
void shrink_family(const Ctx& c, const BitVec& boundary, std::vector<Member>& fam,
                   SolverStats* stats) {
    auto z_verts = boundary.elements();
    std::size_t z = z_verts.size();
    std::size_t cap = std::size_t(1) << z;
    if (fam.size() <= cap) return;
    if (z <= 1) {
        // rank-0 matroid: the lightest member represents everything
        std::size_t best = 0;
        for (std::size_t j = 1; j < fam.size(); ++j)
            if (fam[j].weight < fam[best].weight) best = j;
        fam = {fam[best]};
        return;
    }
    // complete graph on the boundary
    GraphEdgeView kz;
    kz.n = z;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> eidx;
    for (std::size_t a = 0; a < z; ++a)
        for (std::size_t b = a + 1; b < z; ++b) {
            eidx[{a, b}] = kz.tail.size();
            kz.tail.push_back(a);
            kz.head.push_back(b);
            kz.labels.push_back(std::to_string(a) + "-" + std::to_string(b));
        }
    LinearMatroid mk = graphic_matroid(kz);
    std::size_t rank_k = mk.rank(); // z - 1
    std::map<std::size_t, std::size_t> pos; // graph vertex -> position in z_verts
    for (std::size_t i = 0; i < z; ++i) pos[z_verts[i]] = i;

    // forest trace: per component, a star over its boundary vertices
    auto trace = [&](const Member& m) {
        BitVec f(kz.tail.size());
        for (const auto& comp : edge_components(c, m.edges)) {
            std::vector<std::size_t> zs;
            for (auto v : comp)
                if (boundary.test(v)) zs.push_back(pos[v]);
            std::sort(zs.begin(), zs.end());
            for (std::size_t j = 1; j < zs.size(); ++j) {
                auto key = std::make_pair(zs[0], zs[j]);
                f.set(eidx[key]);
            }
        }
        return f;
    };

    std::vector<Member> kept;
    for (std::size_t i = 0; i < rank_k + 1 && i <= rank_k; ++i) {
        WeightedSetFamily fam_i(kz.tail.size(), i);
        std::map<BitVec, std::size_t> best_for; // forest -> member index
        for (std::size_t j = 0; j < fam.size(); ++j) {
            BitVec f = trace(fam[j]);
            if (f.count() != i) continue;
            auto it = best_for.find(f);
            if (it == best_for.end())
                best_for.emplace(f, j);
            else if (fam[j].weight < fam[it->second].weight)
                it->second = j;
        }
        if (best_for.empty()) continue;
        for (auto& [f, j] : best_for) fam_i.add(f, fam[j].weight);
        WeightedSetFamily rep = rep_linear(mk, fam_i, rank_k - i, Sense::Min);
        for (std::size_t r = 0; r < rep.size(); ++r) {
            auto it = best_for.find(rep.set(r));
            kept.push_back(fam[it->second]);
        }
    }
    fam = std::move(kept);
    if (fam.size() > cap)
        throw std::logic_error("steiner family size invariant violated");
    if (stats) stats->record("steiner family", fam.size());
}

void shrink_state(const Ctx& c, State& st, SolverStats* stats) {
    for (auto& [boundary, fam] : st) shrink_family(c, boundary, fam, stats);
}

} // namespace

SteinerResult steiner_tree(const Graph& g, const std::vector<std::size_t>& terminals,
                           const TreeDecomposition& td, const SolverConfig& config,
                           SolverStats* stats) {
    (void)config;
    if (terminals.empty()) throw std::invalid_argument("steiner_tree requires terminals");
    validate_td(td, g);
    Ctx c;
    c.g = &g;
    c.terminals = BitVec(g.n());
    for (auto t : terminals) {
        if (t >= g.n()) throw std::invalid_argument("terminal out of range");
        c.terminals.set(t);
    }
    if (c.terminals.count() == 1) return {};

    NiceTreeDecomposition nice = niceify(td);
    std::vector<State> states(nice.nodes.size());
    std::vector<BitVec> subtree(nice.nodes.size(), BitVec(g.n()));

    for (std::size_t ni = 0; ni < nice.nodes.size(); ++ni) {
        const auto& node = nice.nodes[ni];
        BitVec bag(g.n());
        for (auto v : node.bag) bag.set(v);
        switch (node.kind) {
            case NodeKind::Base: {
                states[ni][BitVec(g.n())] = {{BitVec(g.m()), 0}};
                break;
            }
            case NodeKind::Introduce: {
                std::size_t ch = node.children[0];
                subtree[ni] = subtree[ch] | BitVec::of(g.n(), {node.vertex});
                states[ni] = states[ch];
                break;
            }
            case NodeKind::Forget: {
                std::size_t ch = node.children[0];
                subtree[ni] = subtree[ch];
                std::size_t v = node.vertex;
                // edges from v into the new bag become available
                std::vector<std::size_t> avail;
                for (auto [w, e] : g.adj(v))
                    if (bag.test(w)) avail.push_back(e);
                State next;
                for (const auto& [boundary, fam] : states[ch]) {
                    (void)boundary;
                    for (const auto& m : fam) {
                        std::size_t choices = std::size_t(1) << avail.size();
                        for (std::size_t mask = 0; mask < choices; ++mask) {
                            BitVec edges = m.edges;
                            uint64_t w = m.weight;
                            bool fresh = true;
                            for (std::size_t b = 0; b < avail.size(); ++b)
                                if ((mask >> b) & 1) {
                                    if (edges.test(avail[b])) { fresh = false; break; }
                                    edges.set(avail[b]);
                                    w = checked_weight_sum(w, g.edge(avail[b]).w);
                                }
                            if (!fresh) continue;
                            if (!valid_member(c, edges, subtree[ni], bag)) continue;
                            insert_member(next, c, edges, w, bag);
                        }
                    }
                }
                states[ni] = std::move(next);
                break;
            }
            case NodeKind::Join: {
                std::size_t c1 = node.children[0], c2 = node.children[1];
                subtree[ni] = subtree[c1] | subtree[c2];
                State next;
                for (const auto& [b1, f1] : states[c1])
                    for (const auto& [b2, f2] : states[c2])
                        for (const auto& m1 : f1)
                            for (const auto& m2 : f2) {
                                if (m1.edges.intersects(m2.edges)) continue;
                                BitVec edges = m1.edges | m2.edges;
                                if (!valid_member(c, edges, subtree[ni], bag)) continue;
                                insert_member(next, c, edges,
                                              checked_weight_sum(m1.weight, m2.weight), bag);
                            }
                states[ni] = std::move(next);
                break;
            }
        }
        if (node.kind == NodeKind::Base && !node.bag.empty())
            throw std::logic_error("nice decomposition base bag not empty");
        shrink_state(c, states[ni], stats);
        // free children states
        for (auto ch : node.children) states[ch].clear();
    }

    const State& root = states[nice.root];
    std::optional<SteinerResult> best;
    for (const auto& [boundary, fam] : root) {
        if (!boundary.empty()) continue;
        for (const auto& m : fam) {
            // must be connected and span all terminals
            if (!c.terminals.subset_of(edge_endpoints(c, m.edges))) continue;
            if (edge_components(c, m.edges).size() != 1) continue;
            if (!best || m.weight < best->weight) {
                SteinerResult r;
                for (auto e : m.edges.elements()) r.edges.push_back(e);
                r.weight = m.weight;
                best = std::move(r);
            }
        }
    }
    if (!best) throw std::runtime_error("terminals are not connected in the graph");
    return *best;
}

} // namespace repfam
