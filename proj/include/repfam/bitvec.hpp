#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace repfam {

// Fixed-universe bit vector. Bit i lives in word i/64, bit i%64.
class BitVec {
public:
    BitVec() : n_(0) {}
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t universe() const { return n_; }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (uint64_t w : w_) c += std::size_t(__builtin_popcountll(w));
        return c;
    }

    bool empty() const {
        for (uint64_t w : w_) if (w) return false;
        return true;
    }

    bool subset_of(const BitVec& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    bool intersects(const BitVec& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    BitVec operator|(const BitVec& o) const {
        BitVec r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
        return r;
    }
    BitVec operator&(const BitVec& o) const {
        BitVec r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }
    // this minus o
    BitVec operator-(const BitVec& o) const {
        BitVec r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i];
        return r;
    }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }
    bool operator<(const BitVec& o) const { return w_ < o.w_; }

    std::vector<std::size_t> elements() const {
        std::vector<std::size_t> out;
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t w = w_[wi];
            while (w) {
                out.push_back((wi << 6) + std::size_t(__builtin_ctzll(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    static BitVec of(std::size_t n, const std::vector<std::size_t>& elems) {
        BitVec b(n);
        for (auto e : elems) b.set(e);
        return b;
    }

    std::size_t hash() const {
        std::size_t h = n_;
        for (uint64_t w : w_) h = h * 1000003u ^ std::hash<uint64_t>{}(w);
        return h;
    }

    const std::vector<uint64_t>& words() const { return w_; }
    std::vector<uint64_t>& words() { return w_; }

private:
    std::size_t n_;
    std::vector<uint64_t> w_;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& b) const { return b.hash(); }
};

} // namespace repfam
