#include "repfam/replinear.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace repfam {

namespace {

// binomial table large enough for the subset ranks in play
std::vector<std::vector<uint64_t>> binom_table(std::size_t n, std::size_t k) {
    std::vector<std::vector<uint64_t>> c(n + 1, std::vector<uint64_t>(k + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) {
        c[i][0] = 1;
        for (std::size_t j = 1; j <= std::min(i, k); ++j)
            c[i][j] = c[i - 1][j - 1] + (i >= 1 ? c[i - 1][j] : 0);
    }
    return c;
}

} // namespace

std::vector<std::vector<std::size_t>> subsets_colex(std::size_t k, std::size_t p) {
    std::vector<std::vector<std::size_t>> out;
    if (p > k) return out;
    std::vector<std::size_t> cur(p);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        // next in colex: bump the lowest position that can move without
        // colliding with the next one
        std::size_t i = 0;
        while (i < p) {
            std::size_t limit = (i + 1 < p) ? cur[i + 1] : k;
            if (cur[i] + 1 < limit) break;
            ++i;
        }
        if (i == p) break;
        ++cur[i];
        for (std::size_t j = 0; j < i; ++j) cur[j] = j;
    }
    if (p == 0) out.assign(1, {});
    return out;
}

std::size_t colex_rank(const std::vector<std::size_t>& s) {
    static thread_local std::vector<std::vector<uint64_t>> c;
    std::size_t need = s.empty() ? 1 : *std::max_element(s.begin(), s.end()) + 1;
    if (c.size() < need + 1 || (c.size() && c[0].size() < s.size() + 1))
        c = binom_table(std::max<std::size_t>(need, 64), std::max<std::size_t>(s.size(), 32));
    uint64_t r = 0;
    for (std::size_t a = 0; a < s.size(); ++a) r += c[s[a]][a + 1];
    return std::size_t(r);
}

std::vector<uint64_t> wedge_vector(const Matrix& a, const std::vector<std::size_t>& cols) {
    const PrimeField& f = a.field();
    const std::size_t k = a.rows();
    auto c = binom_table(k, cols.size());
    std::vector<uint64_t> cur{1}; // wedge of zero columns, indexed by the empty set
    std::vector<std::size_t> idx; // scratch: current subset
    for (std::size_t step = 0; step < cols.size(); ++step) {
        std::size_t j = step;            // columns folded in so far
        std::size_t col = cols[step];
        std::vector<uint64_t> next(c[k][j + 1], 0);
        // enumerate subsets of size j+1 in colex order and expand along the
        // freshly appended column
        std::vector<std::size_t> s(j + 1);
        std::iota(s.begin(), s.end(), 0);
        std::vector<uint64_t> pre(j + 2), suf(j + 2);
        for (std::size_t out_rank = 0;; ++out_rank) {
            pre[0] = 0;
            for (std::size_t b = 0; b < j + 1; ++b) pre[b + 1] = pre[b] + c[s[b]][b + 1];
            suf[j + 1] = 0;
            for (std::size_t b = j + 1; b > 0; --b) suf[b - 1] = suf[b] + c[s[b - 1]][b - 1];
            uint64_t acc = 0;
            for (std::size_t apos = 0; apos < j + 1; ++apos) {
                uint64_t x = a.at(s[apos], col);
                if (!x) continue;
                uint64_t minor = cur[pre[apos] + suf[apos + 1]];
                if (!minor) continue;
                uint64_t term = f.mul(x, minor);
                // sign (-1)^{(apos+1) + (j+1)}
                if (((apos + j) & 1) == 1) term = f.neg(term); // apos+1+j+1 odd <=> apos+j odd
                acc = f.add(acc, term);
            }
            next[out_rank] = acc;
            // advance colex
            std::size_t i = 0;
            while (i < j + 1) {
                std::size_t limit = (i + 1 < j + 1) ? s[i + 1] : k;
                if (s[i] + 1 < limit) break;
                ++i;
            }
            if (i == j + 1) break;
            ++s[i];
            for (std::size_t b = 0; b < i; ++b) s[b] = b;
        }
        cur = std::move(next);
    }
    return cur;
}

WeightedSetFamily family_product(const WeightedSetFamily& a, const WeightedSetFamily& b,
                                 Sense sense) {
    if (a.universe() != b.universe())
        throw std::invalid_argument("family product requires a common universe");
    WeightedSetFamily out(a.universe(), a.set_size() + b.set_size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (a.set(i).intersects(b.set(j))) continue;
            out.add(a.set(i) | b.set(j), checked_weight_sum(a.weight(i), b.weight(j)), sense);
        }
    return out;
}

WeightedSetFamily rep_linear(const LinearMatroid& m, const WeightedSetFamily& s,
                             std::size_t q, Sense sense) {
    if (s.universe() != m.size())
        throw std::invalid_argument("family universe must match matroid ground set");
    const std::size_t p = s.set_size();
    if (m.rank() != p + q)
        throw std::invalid_argument("rep_linear requires rank(M) == p + q (truncate first)");
    if (s.size() == 0) return WeightedSetFamily(s.universe(), p);

    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        uint64_t wa = s.weight(a), wb = s.weight(b);
        if (wa != wb) return sense == Sense::Min ? wa < wb : wa > wb;
        return a < b;
    });

    const PrimeField& f = m.field();
    const std::size_t nr = m.rank();
    std::vector<std::vector<uint64_t>> basis; // reduced, pivot-normalized
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> chosen;
    for (std::size_t si : order) {
        std::vector<uint64_t> v = wedge_vector(m.repr(), s.set(si).elements());
        bool zero = true;
        for (uint64_t x : v)
            if (x) { zero = false; break; }
        if (zero)
            throw std::invalid_argument("rep_linear input set is dependent in the matroid");
        for (std::size_t b = 0; b < basis.size(); ++b) {
            uint64_t x = v[pivots[b]];
            if (!x) continue;
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = f.sub(v[i], f.mul(x, basis[b][i]));
        }
        std::size_t piv = v.size();
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i]) { piv = i; break; }
        if (piv == v.size()) continue;
        uint64_t inv = f.inv(v[piv]);
        for (auto& x : v) x = f.mul(x, inv);
        basis.push_back(std::move(v));
        pivots.push_back(piv);
        chosen.push_back(si);
        (void)nr;
    }
    std::sort(chosen.begin(), chosen.end());
    return s.select(chosen);
}

WeightedSetFamily rep_linear_auto(const LinearMatroid& m, const WeightedSetFamily& s,
                                  std::size_t q, Sense sense, uint64_t seed,
                                  unsigned p_conf) {
    const std::size_t target = s.set_size() + q;
    if (m.rank() < target)
        throw std::invalid_argument("matroid rank below p + q");
    if (m.rank() == target) return rep_linear(m, s, q, sense);
    return rep_linear(truncate(m, target, seed, p_conf), s, q, sense);
}

} // namespace repfam
