#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "repfam/bitvec.hpp"
#include "repfam/setfamily.hpp"

namespace repfam {

// Affine maps [n] -> [k^2]; at least one injective on each k-subset
// (Monte Carlo; exhaustively verified and repaired at small scale).
struct HashFamily {
    std::size_t n = 0, k = 0;
    uint64_t modulus = 0; // prime > max(n, k^2)
    std::vector<std::pair<uint64_t, uint64_t>> coeffs; // (a, b)

    std::size_t range() const { return k * k; }
    std::size_t apply(std::size_t fi, std::size_t x) const {
        const auto& [a, b] = coeffs[fi];
        return std::size_t(((unsigned __int128)a * x + b) % modulus % (k * k));
    }
};

HashFamily build_hash_family(std::size_t n, std::size_t k, uint64_t seed, unsigned p_conf);

enum class SepPipeline : uint8_t {
    Auto = 0,     // Complete when C(n,q) is small, else Default
    Default = 1,  // random base, lifted to the universe when n > (p+q)^2
    Full = 2,     // base -> lift -> split chain
    Complete = 3, // all (n-q)-subsets; property (b) holds by construction
};

struct SepConfig {
    uint64_t seed = 1;
    unsigned p_conf = 40;
    SepPipeline pipeline = SepPipeline::Auto;
    std::size_t complete_limit = 200000; // max C(n,q) for the Complete fallback
};

// n-p-q separating collection: member family F plus query map chi.
// chi(A) only returns supersets of A (property (a), enforced); every disjoint
// (A,B) with |A|=p, |B|=q is separated by some member of chi(A) (property (b);
// exact when `verified`, else Monte Carlo with failure <= 2^-p_conf).
class SeparatingCollection {
public:
    SeparatingCollection(std::size_t n, std::size_t p, std::size_t q)
        : n_(n), p_(p), q_(q) {}
    virtual ~SeparatingCollection() = default;

    std::size_t universe() const { return n_; }
    std::size_t p() const { return p_; }
    std::size_t q() const { return q_; }

    // chi(A): deterministic order, duplicates removed.
    virtual std::vector<BitVec> query(const BitVec& a) const = 0;
    // The member family F, materialized.
    virtual std::vector<BitVec> members() const = 0;

    bool verified = false;
    uint64_t seed = 0;
    unsigned p_conf = 0;
    std::string pipeline_desc;
    uint8_t tag = 0; // serialization tag

protected:
    void check_query(const BitVec& a) const;
    std::size_t n_, p_, q_;
};

using SepPtr = std::shared_ptr<const SeparatingCollection>;

// t random sets with per-element probability p/(p+q); exhaustive
// verification + repair for w <= 14, p+q <= 6.
SepPtr build_base(std::size_t w, std::size_t p, std::size_t q, uint64_t seed,
                  unsigned p_conf);

// Universe reduction: base over [(p+q)^2] pulled back through a hash family.
SepPtr lift_universe(SepPtr base, const HashFamily& h, std::size_t n);

// Composition over consecutive partitions into t parts of local size budget s;
// inner[p_hat] must be an n-p_hat-(s-p_hat) collection for every p_hat <= s.
// Yields an n-p-q_tilde collection with q_tilde = s*t - p >= q.
SepPtr split_compose(const std::vector<SepPtr>& inner, std::size_t n, std::size_t p,
                     std::size_t q, std::size_t s, std::size_t t);

SepPtr build_separating_collection(std::size_t n, std::size_t p, std::size_t q,
                                   const SepConfig& config);

void write_collection(std::ostream& out, const SeparatingCollection& c);
SepPtr read_collection(std::istream& in);

// Weighted marking algorithm over a separating collection: keeps, in weight
// order, each set that can claim an unused member of chi(A).
WeightedSetFamily rep_uniform(const WeightedSetFamily& s, std::size_t q, Sense sense,
                              const SepConfig& config);
WeightedSetFamily rep_uniform(const WeightedSetFamily& s, std::size_t q, Sense sense,
                              const SeparatingCollection& c);

// Unweighted variant scanning the whole member family per set.
WeightedSetFamily rep_uniform_naive(const WeightedSetFamily& s, std::size_t q,
                                    const SepConfig& config = {});

} // namespace repfam
