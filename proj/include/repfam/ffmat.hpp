#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace repfam {

// Arithmetic in F_P for a word-sized prime P < 2^61. Products go through
// 128-bit intermediates, so no reduction tricks are needed.
class PrimeField {
public:
    static constexpr uint64_t kDefaultModulus = 2305843009213693951ULL; // 2^61 - 1

    explicit PrimeField(uint64_t modulus = kDefaultModulus);

    uint64_t modulus() const { return p_; }

    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return uint64_t((unsigned __int128)a * b % p_);
    }
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t inv(uint64_t a) const;
    uint64_t reduce(uint64_t x) const { return x % p_; }
    uint64_t reduce_signed(int64_t x) const {
        int64_t r = x % int64_t(p_);
        return r < 0 ? uint64_t(r + int64_t(p_)) : uint64_t(r);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

    static bool is_prime(uint64_t n);

private:
    uint64_t p_;
};

// Dense row-major matrix over F_P.
class Matrix {
public:
    Matrix() : field_(PrimeField()), rows_(0), cols_(0) {}
    Matrix(const PrimeField& f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    Matrix(const PrimeField& f, std::size_t rows, std::size_t cols,
           std::vector<uint64_t> entries);

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    uint64_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    uint64_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

    Matrix submatrix(const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& cols) const;
    Matrix columns(const std::vector<std::size_t>& cols) const;
    Matrix operator*(const Matrix& o) const;

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_ &&
               field_ == o.field_;
    }

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<uint64_t> a_;
};

// Determinant via Gaussian elimination with first-nonzero (lowest row index)
// pivoting. Empty matrix has determinant 1.
uint64_t det(const Matrix& m);

uint64_t minor_det(const Matrix& m, const std::vector<std::size_t>& row_idx,
                   const std::vector<std::size_t>& col_idx);

std::size_t rank(const Matrix& m);

// Row-reduces m and returns a rank(m) x cols matrix with the same row space.
Matrix row_basis(const Matrix& m);

// Greedy matroid optimum: columns scanned in weight order (ascending for min,
// descending for max; ties by column index), kept iff they enlarge the span.
enum class Sense { Min, Max };
std::vector<std::size_t> weighted_column_basis(const Matrix& m,
                                               const std::vector<uint64_t>& w,
                                               Sense sense);

// Σ of weights with overflow detection; throws std::overflow_error.
uint64_t checked_weight_sum(uint64_t a, uint64_t b);

} // namespace repfam
