#include "repfam/treedecomp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace repfam {

std::size_t TreeDecomposition::width() const {
    std::size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return w == 0 ? 0 : w - 1;
}

TreeDecomposition parse_td(const std::string& text) {
    TreeDecomposition td;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0, nbags = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "s") {
            std::string td_tok;
            std::size_t width1;
            if (!(ls >> td_tok >> nbags >> width1 >> td.n) || td_tok != "td")
                throw std::runtime_error("td parse error on line " + std::to_string(lineno));
            td.bags.assign(nbags, {});
            have_header = true;
        } else if (tok == "b") {
            if (!have_header) throw std::runtime_error("td parse error: bag before header");
            std::size_t id;
            if (!(ls >> id) || id < 1 || id > nbags)
                throw std::runtime_error("td parse error: bad bag id on line " +
                                         std::to_string(lineno));
            std::size_t v;
            while (ls >> v) {
                if (v < 1 || v > td.n)
                    throw std::runtime_error("td parse error: unknown vertex in bag on line " +
                                             std::to_string(lineno));
                td.bags[id - 1].push_back(v - 1);
            }
            std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
            td.bags[id - 1].erase(
                std::unique(td.bags[id - 1].begin(), td.bags[id - 1].end()),
                td.bags[id - 1].end());
        } else {
            std::size_t a = 0, b = 0;
            std::istringstream es(line);
            if (!(es >> a >> b) || a < 1 || b < 1 || a > nbags || b > nbags)
                throw std::runtime_error("td parse error: bad tree edge on line " +
                                         std::to_string(lineno));
            td.tree_edges.emplace_back(a - 1, b - 1);
        }
    }
    if (!have_header) throw std::runtime_error("td parse error: missing header");
    if (td.bags.size() > 1 && td.tree_edges.size() + 1 != td.bags.size())
        throw std::runtime_error("td parse error: tree edge count mismatch");
    return td;
}

void validate_td(const TreeDecomposition& td, const Graph& g) {
    if (td.n != g.n()) throw std::invalid_argument("decomposition is for a different graph");
    std::size_t b = td.bags.size();
    if (b == 0) {
        if (g.n() == 0) return;
        throw std::invalid_argument("decomposition has no bags");
    }
    // connectivity of the bag tree
    std::vector<std::vector<std::size_t>> adj(b);
    for (auto [x, y] : td.tree_edges) {
        adj[x].push_back(y);
        adj[y].push_back(x);
    }
    std::vector<char> seen(b, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (auto y : adj[x])
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
    }
    for (std::size_t i = 0; i < b; ++i)
        if (!seen[i]) throw std::invalid_argument("bag tree is disconnected");

    auto bag_has = [&](std::size_t i, std::size_t v) {
        return std::binary_search(td.bags[i].begin(), td.bags[i].end(), v);
    };
    // vertex cover axiom + connectivity axiom per vertex
    for (std::size_t v = 0; v < g.n(); ++v) {
        std::vector<std::size_t> holders;
        for (std::size_t i = 0; i < b; ++i)
            if (bag_has(i, v)) holders.push_back(i);
        if (holders.empty())
            throw std::invalid_argument("vertex missing from every bag");
        // holders must induce a connected subtree
        std::vector<char> hseen(b, 0);
        std::vector<std::size_t> hstack{holders[0]};
        hseen[holders[0]] = 1;
        std::size_t reached = 0;
        while (!hstack.empty()) {
            auto x = hstack.back();
            hstack.pop_back();
            ++reached;
            for (auto y : adj[x])
                if (!hseen[y] && bag_has(y, v)) {
                    hseen[y] = 1;
                    hstack.push_back(y);
                }
        }
        if (reached != holders.size())
            throw std::invalid_argument("bags containing a vertex are not connected");
    }
    // edge axiom
    for (const auto& e : g.edges()) {
        bool covered = false;
        for (std::size_t i = 0; i < b && !covered; ++i)
            covered = bag_has(i, e.u) && bag_has(i, e.v);
        if (!covered) throw std::invalid_argument("edge not covered by any bag");
    }
}

namespace {

// Appends a chain of introduce/forget nodes transforming bag `from` into `to`
// on top of node `child`; returns the top node index.
std::size_t morph_chain(NiceTreeDecomposition& out, std::size_t child,
                        std::vector<std::size_t> from, const std::vector<std::size_t>& to) {
    std::size_t cur = child;
    // forget what is not in `to` (descending for determinism)
    std::vector<std::size_t> drop, add;
    for (auto v : from)
        if (!std::binary_search(to.begin(), to.end(), v)) drop.push_back(v);
    for (auto v : to)
        if (!std::binary_search(from.begin(), from.end(), v)) add.push_back(v);
    std::vector<std::size_t> bag = from;
    for (auto v : drop) {
        bag.erase(std::find(bag.begin(), bag.end(), v));
        out.nodes.push_back({NodeKind::Forget, v, bag, {cur}});
        cur = out.nodes.size() - 1;
    }
    for (auto v : add) {
        bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
        out.nodes.push_back({NodeKind::Introduce, v, bag, {cur}});
        cur = out.nodes.size() - 1;
    }
    return cur;
}

// Leaf chain: base node then introduces up to `bag`.
std::size_t build_leaf(NiceTreeDecomposition& out, const std::vector<std::size_t>& bag) {
    out.nodes.push_back({NodeKind::Base, 0, {}, {}});
    return morph_chain(out, out.nodes.size() - 1, {}, bag);
}

} // namespace

NiceTreeDecomposition niceify(const TreeDecomposition& td) {
    NiceTreeDecomposition out;
    out.width = td.width();
    std::size_t b = td.bags.size();
    if (b == 0) {
        out.nodes.push_back({NodeKind::Base, 0, {}, {}});
        out.root = 0;
        return out;
    }
    std::vector<std::vector<std::size_t>> adj(b);
    for (auto [x, y] : td.tree_edges) {
        adj[x].push_back(y);
        adj[y].push_back(x);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    // builds a nice subtree producing bag td.bags[i]; returns node index
    auto rec = [&](auto&& self, std::size_t i, std::size_t parent) -> std::size_t {
        std::vector<std::size_t> kids;
        for (auto j : adj[i])
            if (j != parent) kids.push_back(j);
        if (kids.empty()) return build_leaf(out, td.bags[i]);
        std::vector<std::size_t> tops;
        for (auto j : kids) {
            std::size_t sub = self(self, j, i);
            tops.push_back(morph_chain(out, sub, td.bags[j], td.bags[i]));
        }
        std::size_t cur = tops[0];
        for (std::size_t k = 1; k < tops.size(); ++k) {
            out.nodes.push_back({NodeKind::Join, 0, td.bags[i], {cur, tops[k]}});
            cur = out.nodes.size() - 1;
        }
        return cur;
    };
    std::size_t top = rec(rec, 0, b);
    out.root = morph_chain(out, top, td.bags[0], {});
    return out;
}

} // namespace repfam
