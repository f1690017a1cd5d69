#include "repfam/matroids.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace repfam {

namespace {

void check_unique(const std::vector<std::string>& labels) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second)
            throw std::invalid_argument("duplicate ground label: " + l);
}

// Enumerates all subsets of [n] of size <= t, calling fn(vector of indices).
template <typename F>
void for_subsets_up_to(std::size_t n, std::size_t t, F&& fn) {
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        fn(cur);
        if (cur.size() == t) return;
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

double log2_binomial(std::size_t n, std::size_t k) {
    double s = 0;
    for (std::size_t i = 0; i < k; ++i)
        s += std::log2(double(n - i)) - std::log2(double(i + 1));
    return s;
}

} // namespace

LinearMatroid::LinearMatroid(Matrix repr, std::vector<std::string> ground)
    : repr_(std::move(repr)), ground_(std::move(ground)) {
    if (ground_.size() != repr_.cols())
        throw std::invalid_argument("one ground label per column required");
    check_unique(ground_);
    if (repfam::rank(repr_) != repr_.rows()) repr_ = row_basis(repr_);
}

std::size_t LinearMatroid::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < ground_.size(); ++i)
        if (ground_[i] == label) return i;
    throw std::invalid_argument("unknown ground label: " + label);
}

bool LinearMatroid::is_independent(const std::vector<std::size_t>& columns) const {
    for (auto c : columns)
        if (c >= ground_.size()) throw std::invalid_argument("column index out of range");
    if (columns.size() > rank()) return false;
    return repfam::rank(repr_.columns(columns)) == columns.size();
}

bool LinearMatroid::is_independent_labels(const std::vector<std::string>& labels) const {
    std::vector<std::size_t> cols;
    cols.reserve(labels.size());
    for (const auto& l : labels) cols.push_back(index_of(l));
    return is_independent(cols);
}

LinearMatroid uniform_matroid(std::size_t n, std::size_t k, const PrimeField& f) {
    if (k > n) throw std::invalid_argument("uniform matroid requires k <= n");
    if (k < 1) throw std::invalid_argument("uniform matroid requires k >= 1");
    if (f.modulus() <= n) throw std::invalid_argument("field modulus must exceed n");
    Matrix a(f, k, n);
    for (std::size_t j = 0; j < n; ++j) {
        uint64_t x = j + 1, v = 1;
        for (std::size_t i = 0; i < k; ++i) {
            a.at(i, j) = v;
            v = f.mul(v, x);
        }
    }
    std::vector<std::string> labels(n);
    for (std::size_t j = 0; j < n; ++j) labels[j] = std::to_string(j);
    return LinearMatroid(std::move(a), std::move(labels));
}

LinearMatroid partition_matroid(const std::vector<std::vector<std::string>>& blocks,
                                const std::vector<std::size_t>& caps,
                                const PrimeField& f) {
    if (blocks.size() != caps.size())
        throw std::invalid_argument("one cap per block required");
    std::vector<LinearMatroid> parts;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& block = blocks[b];
        std::size_t cap = caps[b];
        if (cap > block.size())
            throw std::invalid_argument("block cap exceeds block size");
        if (block.empty()) continue;
        if (cap == 0) {
            // rank-0 block: a zero-row representation marks every element dependent
            Matrix a(f, 0, block.size());
            parts.emplace_back(std::move(a), block);
            continue;
        }
        LinearMatroid u = uniform_matroid(block.size(), cap, f);
        parts.emplace_back(u.repr(), block);
    }
    if (parts.empty()) {
        return LinearMatroid(Matrix(f, 0, 0), {});
    }
    return direct_sum(parts);
}

LinearMatroid graphic_matroid(const GraphEdgeView& g, const PrimeField& f) {
    Matrix a(f, g.n, g.tail.size());
    for (std::size_t e = 0; e < g.tail.size(); ++e) {
        std::size_t u = g.tail[e], v = g.head[e];
        if (u == v) throw std::invalid_argument("graphic matroid rejects loops");
        if (u > v) std::swap(u, v);
        a.at(u, e) = 1;
        a.at(v, e) = f.neg(1);
    }
    return LinearMatroid(std::move(a), g.labels);
}

LinearMatroid direct_sum(const std::vector<LinearMatroid>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct sum of zero matroids");
    const PrimeField& f = parts[0].field();
    std::size_t rows = 0, cols = 0;
    for (const auto& p : parts) {
        if (p.field() != f) throw std::invalid_argument("field mismatch in direct sum");
        rows += p.rank();
        cols += p.size();
    }
    Matrix a(f, rows, cols);
    std::vector<std::string> labels;
    labels.reserve(cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rank(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j)
                a.at(r0 + i, c0 + j) = p.repr().at(i, j);
        labels.insert(labels.end(), p.ground().begin(), p.ground().end());
        r0 += p.rank();
        c0 += p.size();
    }
    return LinearMatroid(std::move(a), std::move(labels));
}

LinearMatroid truncate(const LinearMatroid& m, std::size_t t, uint64_t seed,
                       unsigned p_conf) {
    if (t > m.rank()) throw std::invalid_argument("truncation rank exceeds matroid rank");
    if (t == m.rank()) return m;
    const PrimeField& f = m.field();
    std::size_t n = m.size();

    bool verifiable = n <= 12;
    if (!verifiable) {
        // One Schwartz-Zippel draw per set of size <= t; union bound over C(n,t).
        double log2_fail = log2_binomial(n, t) + std::log2(double(std::max<std::size_t>(t, 1))) -
                           std::log2(double(f.modulus()));
        if (log2_fail > -double(p_conf))
            throw std::invalid_argument(
                "requested truncation confidence unattainable at this field size");
    }

    for (unsigned attempt = 0;; ++attempt) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * attempt);
        std::uniform_int_distribution<uint64_t> dist(0, f.modulus() - 1);
        Matrix l(f, t, m.rank());
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = 0; j < m.rank(); ++j) l.at(i, j) = dist(rng);
        Matrix proj = l * m.repr();
        if (rank(proj) != t) continue;
        LinearMatroid out(std::move(proj), m.ground());
        if (!verifiable) return out;
        bool ok = true;
        for_subsets_up_to(n, t, [&](const std::vector<std::size_t>& s) {
            if (!ok || s.empty()) return;
            if (out.is_independent(s) != m.is_independent(s)) ok = false;
        });
        if (ok) return out;
        if (attempt > 64)
            throw std::runtime_error("truncation verification kept failing");
    }
}

} // namespace repfam
