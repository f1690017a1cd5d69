#include <algorithm>
#include <map>
#include <stdexcept>

#include "repfam/matroids.hpp"
#include "repfam/replinear.hpp"
#include "repfam/solvers.hpp"

namespace repfam {

namespace {

// Matroid elements: up to four copies per arc. Copy 1 and 2 live in graphic
// matroids of the underlying graph; copy 3 in a partition matroid over arcs
// that may enter each non-root vertex (out-branching side); copy 4 over arcs
// that may leave each non-root vertex (in-branching side).
struct ScssGround {
    LinearMatroid matroid;
    std::size_t n_elems;
    // per arc: element indices of its copies, SIZE_MAX when absent
    std::vector<std::array<std::size_t, 4>> copies;
    std::vector<std::size_t> full_arcs; // arcs with all four copies (s not incident)
};

ScssGround build_scss_matroid(const Digraph& d, std::size_t s) {
    std::size_t m = d.m();
    GraphEdgeView und;
    und.n = d.n();
    std::vector<std::string> labels2;
    for (std::size_t i = 0; i < m; ++i) {
        und.tail.push_back(d.arc(i).u);
        und.head.push_back(d.arc(i).v);
        und.labels.push_back("a" + std::to_string(i) + ".1");
        labels2.push_back("a" + std::to_string(i) + ".2");
    }
    LinearMatroid m1 = graphic_matroid(und);
    GraphEdgeView und2 = und;
    und2.labels = labels2;
    LinearMatroid m2 = graphic_matroid(und2);

    std::vector<std::vector<std::string>> blocks3, blocks4;
    std::vector<std::size_t> caps3, caps4;
    for (std::size_t v = 0; v < d.n(); ++v) {
        if (v == s) continue;
        std::vector<std::string> in_block, out_block;
        for (auto [u, ai] : d.in(v)) {
            (void)u;
            in_block.push_back("a" + std::to_string(ai) + ".3");
        }
        for (auto [u, ai] : d.out(v)) {
            (void)u;
            out_block.push_back("a" + std::to_string(ai) + ".4");
        }
        if (!in_block.empty()) {
            blocks3.push_back(in_block);
            caps3.push_back(1);
        }
        if (!out_block.empty()) {
            blocks4.push_back(out_block);
            caps4.push_back(1);
        }
    }
    LinearMatroid m3 = partition_matroid(blocks3, caps3);
    LinearMatroid m4 = partition_matroid(blocks4, caps4);
    LinearMatroid full = direct_sum({m1, m2, m3, m4});

    ScssGround g{full, full.size(), {}, {}};
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < full.size(); ++i) pos[full.ground()[i]] = i;
    g.copies.assign(m, {SIZE_MAX, SIZE_MAX, SIZE_MAX, SIZE_MAX});
    for (std::size_t i = 0; i < m; ++i) {
        for (int cpy = 1; cpy <= 4; ++cpy) {
            auto it = pos.find("a" + std::to_string(i) + "." + std::to_string(cpy));
            if (it != pos.end()) g.copies[i][cpy - 1] = it->second;
        }
        if (d.arc(i).u != s && d.arc(i).v != s) g.full_arcs.push_back(i);
    }
    return g;
}

struct DpMember {
    BitVec elems;        // matroid element set (4 per arc)
    std::vector<std::size_t> arcs; // sorted arc indices
    uint64_t weight;
};

// Representative families of candidate common-arc sets, level i = i arcs.
std::vector<std::vector<DpMember>> scss_dp(const Digraph& d, const ScssGround& g,
                                           std::size_t lmax, bool weighted,
                                           SolverStats* stats) {
    std::size_t rank = g.matroid.rank();
    std::vector<std::vector<DpMember>> levels(lmax + 1);
    levels[0].push_back({BitVec(g.n_elems), {}, 0});
    for (std::size_t i = 0; i < lmax; ++i) {
        if (levels[i].empty()) break;
        std::map<BitVec, DpMember> next;
        for (const auto& mem : levels[i]) {
            for (auto ai : g.full_arcs) {
                if (!mem.arcs.empty() && mem.arcs.back() >= ai) continue; // canonical order
                BitVec elems = mem.elems;
                for (int cpy = 0; cpy < 4; ++cpy) elems.set(g.copies[ai][cpy]);
                if (elems.count() != (i + 1) * 4) continue;
                auto cols = elems.elements();
                if (!g.matroid.is_independent(cols)) continue;
                uint64_t w = weighted ? checked_weight_sum(mem.weight, d.arc(ai).w)
                                      : mem.weight + 1;
                auto it = next.find(elems);
                if (it == next.end()) {
                    DpMember nm{elems, mem.arcs, w};
                    nm.arcs.push_back(ai);
                    next.emplace(elems, std::move(nm));
                } else if (w < it->second.weight) {
                    it->second.weight = w;
                }
            }
        }
        if (next.empty()) break;
        // reduce to a min (rank - 4(i+1))-representative family
        WeightedSetFamily fam(g.n_elems, 4 * (i + 1));
        std::vector<const DpMember*> owners;
        for (const auto& [elems, mem] : next) {
            fam.add(elems, mem.weight);
            owners.push_back(&mem);
        }
        std::size_t q = rank - 4 * (i + 1);
        WeightedSetFamily rep = rep_linear(g.matroid, fam, q, Sense::Min);
        for (std::size_t r = 0; r < rep.size(); ++r) {
            auto it = next.find(rep.set(r));
            levels[i + 1].push_back(it->second);
        }
        if (stats)
            stats->record("scss level " + std::to_string(i + 1), levels[i + 1].size());
    }
    return levels;
}

// Subdigraph restricted to arcs with head != s (out side) or tail != s (in side),
// expressed through weights on the full arc list.
std::optional<std::vector<std::size_t>> branching_with(
    const Digraph& d, std::size_t s, Branching dir, const std::vector<char>& forced,
    bool weighted, uint64_t* cost_out) {
    std::vector<uint64_t> w(d.m(), 0);
    constexpr uint64_t kBig = uint64_t(1) << 40;
    for (std::size_t i = 0; i < d.m(); ++i) {
        bool excluded = dir == Branching::Out ? d.arc(i).v == s : d.arc(i).u == s;
        if (excluded)
            w[i] = kBig; // never part of a min branching unless infeasible anyway
        else if (forced[i])
            w[i] = 0;
        else
            w[i] = weighted ? d.arc(i).w : 1;
    }
    auto res = min_cost_arborescence(d, s, w, dir);
    if (!res) return std::nullopt;
    uint64_t cost = 0;
    for (auto ai : *res) {
        if (w[ai] >= kBig) return std::nullopt; // used an excluded arc: infeasible side
        cost += w[ai];
    }
    if (cost_out) *cost_out = cost;
    return res;
}

std::vector<std::size_t> scss_core(const Digraph& d, bool weighted,
                                   const SolverConfig& config, SolverStats* stats) {
    (void)config;
    std::size_t n = d.n();
    if (n == 0) return {};
    if (n == 1) return {};
    auto comps = scc(d);
    if (comps.size() != 1) throw std::invalid_argument("digraph is not strongly connected");

    std::size_t s = 0;
    ScssGround g = build_scss_matroid(d, s);
    std::size_t lmax = n >= 2 ? n - 2 : 0;
    auto levels = scss_dp(d, g, lmax, weighted, stats);

    std::vector<char> forced(d.m(), 0);
    std::optional<std::vector<std::size_t>> best;
    uint64_t best_w = UINT64_MAX;
    auto consider = [&](const std::vector<std::size_t>& arcs) {
        uint64_t w = 0;
        for (auto ai : arcs) w = checked_weight_sum(w, weighted ? d.arc(ai).w : 1);
        if (w < best_w) {
            best_w = w;
            best = arcs;
        }
    };
    auto try_member = [&](const DpMember& mem) -> bool {
        std::fill(forced.begin(), forced.end(), 0);
        for (auto ai : mem.arcs) forced[ai] = 1;
        uint64_t c_out = 0, c_in = 0;
        auto bo = branching_with(d, s, Branching::Out, forced, weighted, &c_out);
        if (!bo) return false;
        auto bi = branching_with(d, s, Branching::In, forced, weighted, &c_in);
        if (!bi) return false;
        if (!weighted) {
            // the member counts as common arcs only when both branchings kept all of it
            if (c_out != n - 1 - mem.arcs.size() || c_in != n - 1 - mem.arcs.size())
                return false;
        }
        std::vector<std::size_t> arcs = *bo;
        arcs.insert(arcs.end(), bi->begin(), bi->end());
        arcs.insert(arcs.end(), mem.arcs.begin(), mem.arcs.end());
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        consider(arcs);
        return true;
    };

    if (!weighted) {
        for (std::size_t l = lmax + 1; l-- > 0;) {
            bool hit = false;
            for (const auto& mem : levels[l])
                if (try_member(mem)) hit = true;
            if (hit && best) break; // largest feasible common-arc count wins
        }
    } else {
        for (std::size_t l = 0; l <= lmax; ++l)
            for (const auto& mem : levels[l]) try_member(mem);
    }
    if (!best) throw std::logic_error("no branching pair found in a strong digraph");

    // validate strongness of the result
    Digraph check(n);
    for (auto ai : *best) check.add_arc(d.arc(ai).u, d.arc(ai).v);
    if (scc(check).size() != 1 || (n > 1 && check.n() != n))
        throw std::logic_error("scss result failed strongness validation");
    return *best;
}

} // namespace

std::vector<std::size_t> min_scss(const Digraph& d, const SolverConfig& config,
                                  SolverStats* stats) {
    if (d.n() < 2) throw std::invalid_argument("min_scss requires n >= 2");
    return scss_core(d, false, config, stats);
}

std::vector<std::size_t> meg(const Digraph& d, bool weighted, const SolverConfig& config,
                             SolverStats* stats) {
    std::size_t n = d.n();
    auto comps = scc(d);
    std::vector<std::size_t> comp_of(n);
    for (std::size_t ci = 0; ci < comps.size(); ++ci)
        for (auto v : comps[ci]) comp_of[v] = ci;

    std::vector<std::size_t> result;
    // intra-component arcs: per-component minimum strong spanning subdigraph
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& comp = comps[ci];
        if (comp.size() < 2) continue;
        Digraph sub(comp.size());
        std::map<std::size_t, std::size_t> local;
        for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
        std::vector<std::size_t> arc_map;
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> arc_of;
        for (std::size_t ai = 0; ai < d.m(); ++ai) {
            const auto& a = d.arc(ai);
            if (comp_of[a.u] != ci || comp_of[a.v] != ci) continue;
            sub.add_arc(local[a.u], local[a.v], a.w);
            arc_of[{local[a.u], local[a.v]}] = ai;
        }
        (void)arc_map;
        auto sub_res = scss_core(sub, weighted, config, stats);
        for (auto si : sub_res) {
            const auto& a = sub.arc(si);
            result.push_back(arc_of[{a.u, a.v}]);
        }
    }

    // inter-component arcs: transitive reduction of the condensation,
    // realized with the cheapest arc per reduced pair
    std::size_t cn = comps.size();
    std::vector<std::vector<char>> cadj(cn, std::vector<char>(cn, 0));
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> best_arc;
    for (std::size_t ai = 0; ai < d.m(); ++ai) {
        const auto& a = d.arc(ai);
        std::size_t cu = comp_of[a.u], cv = comp_of[a.v];
        if (cu == cv) continue;
        cadj[cu][cv] = 1;
        auto key = std::make_pair(cu, cv);
        auto it = best_arc.find(key);
        if (it == best_arc.end() || d.arc(it->second).w > a.w) best_arc[key] = ai;
    }
    // reachability in the condensation (it is a DAG)
    std::vector<std::vector<char>> reach = cadj;
    for (std::size_t k = 0; k < cn; ++k)
        for (std::size_t i = 0; i < cn; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < cn; ++j)
                    if (reach[k][j]) reach[i][j] = 1;
    for (std::size_t i = 0; i < cn; ++i)
        for (std::size_t j = 0; j < cn; ++j) {
            if (!cadj[i][j]) continue;
            bool redundant = false;
            for (std::size_t k = 0; k < cn && !redundant; ++k)
                redundant = k != i && k != j && reach[i][k] && reach[k][j];
            if (!redundant) result.push_back(best_arc[{i, j}]);
        }
    std::sort(result.begin(), result.end());

    // validate: reachability must match the input digraph's
    Digraph check(n);
    for (auto ai : result) check.add_arc(d.arc(ai).u, d.arc(ai).v);
    auto closure = [](const Digraph& dg) {
        std::size_t nn = dg.n();
        std::vector<std::vector<char>> r(nn, std::vector<char>(nn, 0));
        for (std::size_t v = 0; v < nn; ++v) r[v][v] = 1;
        for (const auto& a : dg.arcs()) r[a.u][a.v] = 1;
        for (std::size_t k = 0; k < nn; ++k)
            for (std::size_t i = 0; i < nn; ++i)
                if (r[i][k])
                    for (std::size_t j = 0; j < nn; ++j)
                        if (r[k][j]) r[i][j] = 1;
        return r;
    };
    if (closure(d) != closure(check))
        throw std::logic_error("meg result failed reachability validation");
    return result;
}

} // namespace repfam
