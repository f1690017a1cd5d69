#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "repfam/bitvec.hpp"
#include "repfam/ffmat.hpp"

namespace repfam {

// p-family: sets of a common size over a fixed universe, with one non-negative
// weight each. Duplicates collapse to the sense-optimal weight on insert.
class WeightedSetFamily {
public:
    WeightedSetFamily() : n_(0), p_(0) {}
    WeightedSetFamily(std::size_t universe_size, std::size_t set_size)
        : n_(universe_size), p_(set_size) {}

    std::size_t universe() const { return n_; }
    std::size_t set_size() const { return p_; }
    std::size_t size() const { return sets_.size(); }

    const std::vector<BitVec>& sets() const { return sets_; }
    const std::vector<uint64_t>& weights() const { return weights_; }
    const BitVec& set(std::size_t i) const { return sets_[i]; }
    uint64_t weight(std::size_t i) const { return weights_[i]; }

    // Returns the index the set landed on (existing index if duplicate).
    std::size_t add(const BitVec& s, uint64_t w, Sense sense = Sense::Min);

    WeightedSetFamily select(const std::vector<std::size_t>& indices) const;

private:
    std::size_t n_, p_;
    std::vector<BitVec> sets_;
    std::vector<uint64_t> weights_;
    std::unordered_map<BitVec, std::size_t, BitVecHash> index_;
};

// Text format: header "p q n t", then one line per set: "w i1 i2 ... ip".
// q is carried in the header for round-tripping; the family itself stores p only.
struct SerializedFamily {
    WeightedSetFamily family;
    std::size_t q = 0;
};

SerializedFamily read_family(std::istream& in);
void write_family(std::ostream& out, const WeightedSetFamily& f, std::size_t q);

} // namespace repfam
