#pragma once

#include <string>
#include <vector>

#include "repfam/ffmat.hpp"

namespace repfam {

struct GraphEdgeView {
    std::size_t n = 0;
    // (u, v, label) per edge, u != v
    std::vector<std::size_t> tail, head;
    std::vector<std::string> labels;
};

// Linear matroid: ground element i is column i of repr; repr has full row rank.
class LinearMatroid {
public:
    LinearMatroid(Matrix repr, std::vector<std::string> ground);

    const Matrix& repr() const { return repr_; }
    const PrimeField& field() const { return repr_.field(); }
    const std::vector<std::string>& ground() const { return ground_; }
    std::size_t size() const { return ground_.size(); }
    std::size_t rank() const { return repr_.rows(); }

    std::size_t index_of(const std::string& label) const;

    bool is_independent(const std::vector<std::size_t>& columns) const;
    bool is_independent_labels(const std::vector<std::string>& labels) const;

private:
    Matrix repr_;
    std::vector<std::string> ground_;
};

// U_{n,k} as a k x n Vandermonde matrix, column j carrying powers of j (1-based).
LinearMatroid uniform_matroid(std::size_t n, std::size_t k,
                              const PrimeField& f = PrimeField());

LinearMatroid partition_matroid(const std::vector<std::vector<std::string>>& blocks,
                                const std::vector<std::size_t>& caps,
                                const PrimeField& f = PrimeField());

// Signed incidence matrix, +1 at the lower-indexed endpoint, row-reduced.
LinearMatroid graphic_matroid(const GraphEdgeView& g, const PrimeField& f = PrimeField());

LinearMatroid direct_sum(const std::vector<LinearMatroid>& parts);

// Random t-row projection of the representation; independence of sets of size
// <= t is preserved except with probability 2^-p_conf. For small ground sets
// the result is verified exhaustively and redrawn until exact.
LinearMatroid truncate(const LinearMatroid& m, std::size_t t, uint64_t seed,
                       unsigned p_conf);

} // namespace repfam
