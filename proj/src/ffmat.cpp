#include "repfam/ffmat.hpp"

#include <algorithm>
#include <numeric>

namespace repfam {

namespace {

uint64_t mulmod_raw(uint64_t a, uint64_t b, uint64_t m) {
    return uint64_t((unsigned __int128)a * b % m);
}

uint64_t powmod_raw(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_raw(r, a, m);
        a = mulmod_raw(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool PrimeField::is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    // Deterministic Miller-Rabin for 64-bit inputs with the standard witness set.
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod_raw(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod_raw(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(uint64_t modulus) : p_(modulus) {
    if (modulus >= (1ULL << 61))
        throw std::invalid_argument("field modulus must be < 2^61");
    if (!is_prime(modulus))
        throw std::invalid_argument("field modulus must be prime");
}

uint64_t PrimeField::pow(uint64_t a, uint64_t e) const { return powmod_raw(a % p_, e, p_); }

uint64_t PrimeField::inv(uint64_t a) const {
    a %= p_;
    if (a == 0) throw std::domain_error("inverse of zero");
    return powmod_raw(a, p_ - 2, p_);
}

Matrix::Matrix(const PrimeField& f, std::size_t rows, std::size_t cols,
               std::vector<uint64_t> entries)
    : field_(f), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols)
        throw std::invalid_argument("entry count does not match dimensions");
    for (auto& v : a_) v %= f.modulus();
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) const {
    Matrix r(field_, rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= rows_) throw std::out_of_range("row index out of range");
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j] >= cols_) throw std::out_of_range("column index out of range");
            r.at(i, j) = at(rows[i], cols[j]);
        }
    }
    return r;
}

Matrix Matrix::columns(const std::vector<std::size_t>& cols) const {
    std::vector<std::size_t> all(rows_);
    std::iota(all.begin(), all.end(), 0);
    return submatrix(all, cols);
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch in product");
    if (field_ != o.field_) throw std::invalid_argument("field mismatch in product");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            uint64_t v = at(i, k);
            if (!v) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = field_.add(r.at(i, j), field_.mul(v, o.at(k, j)));
        }
    return r;
}

namespace {

// In-place elimination; returns (rank, det-if-square). Works on a copy held by
// the callers below.
struct ElimResult {
    std::size_t rank;
    uint64_t det;
};

ElimResult eliminate(Matrix& m) {
    const PrimeField& f = m.field();
    std::size_t nr = m.rows(), nc = m.cols();
    uint64_t d = 1;
    bool neg = false;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t piv = r;
        while (piv < nr && m.at(piv, c) == 0) ++piv;
        if (piv == nr) continue;
        if (piv != r) {
            for (std::size_t j = c; j < nc; ++j) std::swap(m.at(piv, j), m.at(r, j));
            neg = !neg;
        }
        uint64_t pv = m.at(r, c);
        d = f.mul(d, pv);
        uint64_t pinv = f.inv(pv);
        for (std::size_t i = r + 1; i < nr; ++i) {
            uint64_t factor = f.mul(m.at(i, c), pinv);
            if (!factor) continue;
            m.at(i, c) = 0;
            for (std::size_t j = c + 1; j < nc; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
        }
        ++r;
    }
    if (neg) d = f.neg(d);
    return {r, d};
}

} // namespace

uint64_t det(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det requires a square matrix");
    if (m.rows() == 0) return 1;
    Matrix c = m;
    ElimResult e = eliminate(c);
    return e.rank == m.rows() ? e.det : 0;
}

uint64_t minor_det(const Matrix& m, const std::vector<std::size_t>& row_idx,
                   const std::vector<std::size_t>& col_idx) {
    if (row_idx.size() != col_idx.size())
        throw std::invalid_argument("minor_det requires |I| == |J|");
    return det(m.submatrix(row_idx, col_idx));
}

std::size_t rank(const Matrix& m) {
    Matrix c = m;
    return eliminate(c).rank;
}

Matrix row_basis(const Matrix& m) {
    Matrix c = m;
    std::size_t r = eliminate(c).rank;
    Matrix out(m.field(), r, m.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = c.at(i, j);
    return out;
}

std::vector<std::size_t> weighted_column_basis(const Matrix& m,
                                               const std::vector<uint64_t>& w,
                                               Sense sense) {
    if (w.size() != m.cols())
        throw std::invalid_argument("one weight per column required");
    std::vector<std::size_t> order(m.cols());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (w[a] != w[b]) return sense == Sense::Min ? w[a] < w[b] : w[a] > w[b];
        return a < b;
    });

    const PrimeField& f = m.field();
    std::size_t nr = m.rows();
    // Echelon basis of the span so far: rows with recorded pivot positions.
    std::vector<std::vector<uint64_t>> basis;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> chosen;
    for (std::size_t c : order) {
        std::vector<uint64_t> v(nr);
        for (std::size_t i = 0; i < nr; ++i) v[i] = m.at(i, c);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            uint64_t x = v[pivots[b]];
            if (!x) continue;
            for (std::size_t i = 0; i < nr; ++i)
                v[i] = f.sub(v[i], f.mul(x, basis[b][i]));
        }
        std::size_t piv = nr;
        for (std::size_t i = 0; i < nr; ++i)
            if (v[i]) { piv = i; break; }
        if (piv == nr) continue;
        uint64_t inv = f.inv(v[piv]);
        for (auto& x : v) x = f.mul(x, inv);
        basis.push_back(std::move(v));
        pivots.push_back(piv);
        chosen.push_back(c);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

uint64_t checked_weight_sum(uint64_t a, uint64_t b) {
    uint64_t s = a + b;
    if (s < a) throw std::overflow_error("weight sum overflows 64 bits");
    return s;
}

} // namespace repfam
