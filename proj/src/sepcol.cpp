#include "repfam/sepcol.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace repfam {

namespace {

double rnd01(std::mt19937_64& rng) {
    return double(rng() >> 11) * (1.0 / 9007199254740992.0);
}

uint64_t next_prime_above(uint64_t n) {
    uint64_t c = n + 1;
    while (!PrimeField::is_prime(c)) ++c;
    return c;
}

double binom_d(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    double r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
    return r;
}

template <typename F>
void for_each_subset(std::size_t n, std::size_t k, const BitVec& forbidden, F&& fn) {
    std::vector<std::size_t> avail;
    for (std::size_t i = 0; i < n; ++i)
        if (!forbidden.test(i)) avail.push_back(i);
    if (k > avail.size()) return;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            BitVec b(n);
            for (auto e : cur) b.set(e);
            fn(b);
            return;
        }
        for (std::size_t i = start; i + (k - cur.size()) <= avail.size(); ++i) {
            cur.push_back(avail[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

void sort_unique(std::vector<BitVec>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Explicit member list; chi(A) is a superset scan. Used for the random base,
// the complete collection, and deserialized collections.
class ScanCollection : public SeparatingCollection {
public:
    ScanCollection(std::size_t n, std::size_t p, std::size_t q, std::vector<BitVec> sets)
        : SeparatingCollection(n, p, q), sets_(std::move(sets)) {}

    std::vector<BitVec> query(const BitVec& a) const override {
        check_query(a);
        std::vector<BitVec> out;
        for (const auto& f : sets_)
            if (a.subset_of(f)) out.push_back(f);
        sort_unique(out);
        return out;
    }
    std::vector<BitVec> members() const override { return sets_; }

    std::vector<BitVec> sets_;
};

class LiftedCollection : public SeparatingCollection {
public:
    LiftedCollection(std::size_t n, std::size_t p, std::size_t q, SepPtr base, HashFamily h)
        : SeparatingCollection(n, p, q), base_(std::move(base)), h_(std::move(h)) {}

    std::vector<BitVec> query(const BitVec& a) const override {
        check_query(a);
        std::vector<BitVec> out;
        auto elems = a.elements();
        for (std::size_t fi = 0; fi < h_.coeffs.size(); ++fi) {
            std::vector<std::size_t> img;
            img.reserve(elems.size());
            bool injective = true;
            for (auto e : elems) {
                std::size_t y = h_.apply(fi, e);
                if (std::find(img.begin(), img.end(), y) != img.end()) {
                    injective = false;
                    break;
                }
                img.push_back(y);
            }
            if (!injective) continue;
            BitVec ahat(h_.range());
            for (auto y : img) ahat.set(y);
            for (const auto& fhat : base_->query(ahat)) out.push_back(preimage(fi, fhat));
        }
        for (const auto& f : extras_)
            if (a.subset_of(f)) out.push_back(f);
        sort_unique(out);
        return out;
    }

    std::vector<BitVec> members() const override {
        std::vector<BitVec> out;
        auto base_sets = base_->members();
        for (std::size_t fi = 0; fi < h_.coeffs.size(); ++fi)
            for (const auto& fhat : base_sets) out.push_back(preimage(fi, fhat));
        out.insert(out.end(), extras_.begin(), extras_.end());
        sort_unique(out);
        return out;
    }

    BitVec preimage(std::size_t fi, const BitVec& fhat) const {
        BitVec f(n_);
        for (std::size_t x = 0; x < n_; ++x)
            if (fhat.test(h_.apply(fi, x))) f.set(x);
        return f;
    }

    SepPtr base_;
    HashFamily h_;
    std::vector<BitVec> extras_; // verification repairs
};

class SplitCollection : public SeparatingCollection {
public:
    SplitCollection(std::size_t n, std::size_t p, std::size_t q, std::vector<SepPtr> inner,
                    std::size_t s, std::size_t t)
        : SeparatingCollection(n, p, q), inner_(std::move(inner)), s_(s), t_(t) {}

    std::vector<BitVec> query(const BitVec& a) const override {
        check_query(a);
        std::vector<BitVec> out;
        for_each_partition([&](const std::vector<std::size_t>& bounds) {
            // parts U_i = [bounds[i], bounds[i+1])
            std::vector<BitVec> parts(t_, BitVec(n_));
            std::vector<std::size_t> psz(t_, 0);
            for (std::size_t i = 0; i < t_; ++i) {
                for (std::size_t x = bounds[i]; x < bounds[i + 1]; ++x) parts[i].set(x);
                psz[i] = (a & parts[i]).count();
                if (psz[i] > s_) return;
            }
            // per-part candidates restricted to the part
            std::vector<std::vector<BitVec>> cand(t_);
            for (std::size_t i = 0; i < t_; ++i) {
                auto fs = inner_[psz[i]]->query(a & parts[i]);
                for (const auto& f : fs) cand[i].push_back(f & parts[i]);
                sort_unique(cand[i]);
                if (cand[i].empty()) return;
            }
            BitVec acc(n_);
            combine(cand, 0, acc, out);
        });
        sort_unique(out);
        return out;
    }

    std::vector<BitVec> members() const override {
        // Cartesian blowup; only sensible at toy sizes (serialization, naive scans).
        std::vector<BitVec> out;
        for_each_partition([&](const std::vector<std::size_t>& bounds) {
            std::vector<BitVec> parts(t_, BitVec(n_));
            for (std::size_t i = 0; i < t_; ++i)
                for (std::size_t x = bounds[i]; x < bounds[i + 1]; ++x) parts[i].set(x);
            // every tuple of inner members, one per part and any size index
            std::vector<std::vector<BitVec>> cand(t_);
            for (std::size_t i = 0; i < t_; ++i) {
                for (std::size_t ph = 0; ph <= s_; ++ph)
                    for (const auto& f : inner_[ph]->members()) cand[i].push_back(f & parts[i]);
                sort_unique(cand[i]);
            }
            BitVec acc(n_);
            combine(cand, 0, acc, out);
        });
        sort_unique(out);
        return out;
    }

    template <typename F>
    void for_each_partition(F&& fn) const {
        // consecutive partitions = nondecreasing split points bounds[1..t-1] in [0, n]
        std::vector<std::size_t> bounds(t_ + 1, 0);
        bounds[t_] = n_;
        if (t_ == 1) {
            fn(bounds);
            return;
        }
        std::vector<std::size_t> pts(t_ - 1, 0);
        auto rec = [&](auto&& self, std::size_t i, std::size_t lo) -> void {
            if (i == t_ - 1) {
                for (std::size_t j = 0; j < t_ - 1; ++j) bounds[j + 1] = pts[j];
                fn(bounds);
                return;
            }
            for (std::size_t b = lo; b <= n_; ++b) {
                pts[i] = b;
                self(self, i + 1, b);
            }
        };
        rec(rec, 0, 0);
    }

    void combine(const std::vector<std::vector<BitVec>>& cand, std::size_t i, BitVec& acc,
                 std::vector<BitVec>& out) const {
        if (i == cand.size()) {
            out.push_back(acc);
            return;
        }
        for (const auto& f : cand[i]) {
            BitVec next = acc | f;
            combine(cand, i + 1, next, out);
        }
    }

    std::vector<SepPtr> inner_;
    std::size_t s_, t_;
};

// Deterministic repair set for a violated pair: contains A, avoids B.
BitVec repair_set(std::size_t n, const BitVec& a, const BitVec& b) {
    BitVec f(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!b.test(i)) f.set(i);
    return f | a;
}

// Exhaustive property-(b) check; returns violations (possibly repaired by caller).
template <typename Q>
std::vector<std::pair<BitVec, BitVec>> find_violations(std::size_t n, std::size_t p,
                                                       std::size_t q, Q&& query) {
    std::vector<std::pair<BitVec, BitVec>> bad;
    for_each_subset(n, p, BitVec(n), [&](const BitVec& a) {
        auto fs = query(a);
        for_each_subset(n, q, a, [&](const BitVec& b) {
            for (const auto& f : fs)
                if (!f.intersects(b)) return;
            bad.emplace_back(a, b);
        });
    });
    return bad;
}

constexpr std::size_t kVerifyUniverse = 14;
constexpr std::size_t kVerifySizes = 6;

} // namespace

void SeparatingCollection::check_query(const BitVec& a) const {
    if (a.universe() != n_) throw std::invalid_argument("query universe mismatch");
    if (a.count() != p_) throw std::invalid_argument("query set must have cardinality p");
}

HashFamily build_hash_family(std::size_t n, std::size_t k, uint64_t seed, unsigned p_conf) {
    if (k < 1) throw std::invalid_argument("hash family requires k >= 1");
    HashFamily h;
    h.n = n;
    h.k = k;
    h.modulus = next_prime_above(std::max<uint64_t>({n, uint64_t(k) * k, 2}));
    std::size_t t = std::size_t(
        std::ceil(double(k) * std::log2(double(std::max<std::size_t>(n, 2))) + double(p_conf)));
    std::mt19937_64 rng(seed);
    auto draw = [&]() {
        uint64_t a = 1 + rng() % (h.modulus - 1);
        uint64_t b = rng() % h.modulus;
        h.coeffs.emplace_back(a, b);
    };
    for (std::size_t i = 0; i < t; ++i) draw();

    if (n <= 12 && k <= 4) {
        // verify k-perfectness exhaustively, appending fresh maps until it holds
        for (int rounds = 0; rounds < 4096; ++rounds) {
            bool ok = true;
            for_each_subset(n, k, BitVec(n), [&](const BitVec& s) {
                if (!ok) return;
                auto elems = s.elements();
                for (std::size_t fi = 0; fi < h.coeffs.size(); ++fi) {
                    std::vector<std::size_t> img;
                    bool inj = true;
                    for (auto e : elems) {
                        std::size_t y = h.apply(fi, e);
                        if (std::find(img.begin(), img.end(), y) != img.end()) {
                            inj = false;
                            break;
                        }
                        img.push_back(y);
                    }
                    if (inj) return;
                }
                ok = false;
            });
            if (ok) return h;
            draw();
        }
        throw std::runtime_error("hash family verification kept failing");
    }
    return h;
}

SepPtr build_base(std::size_t w, std::size_t p, std::size_t q, uint64_t seed,
                  unsigned p_conf) {
    if (p + q > w) throw std::invalid_argument("separating collection requires p + q <= w");
    std::vector<BitVec> sets;
    if (p + q == 0) {
        sets.emplace_back(w);
    } else {
        double ratio = std::pow(double(p + q), double(p + q));
        if (p) ratio /= std::pow(double(p), double(p));
        if (q) ratio /= std::pow(double(q), double(q));
        double lnw = std::max(std::log(double(w)), 1.0);
        std::size_t t = std::size_t(std::ceil(ratio * double(p + q + 1 + p_conf) * lnw));
        double prob = double(p) / double(p + q);
        std::mt19937_64 rng(seed);
        sets.reserve(t);
        for (std::size_t i = 0; i < t; ++i) {
            BitVec f(w);
            for (std::size_t x = 0; x < w; ++x)
                if (rnd01(rng) < prob) f.set(x);
            sets.push_back(f);
        }
    }
    bool verified = false;
    if (w <= kVerifyUniverse && p + q <= kVerifySizes) {
        auto bad = find_violations(w, p, q, [&](const BitVec& a) {
            std::vector<BitVec> out;
            for (const auto& f : sets)
                if (a.subset_of(f)) out.push_back(f);
            return out;
        });
        for (const auto& [a, b] : bad) sets.push_back(repair_set(w, a, b));
        verified = true;
    }
    auto c = std::make_shared<ScanCollection>(w, p, q, std::move(sets));
    c->verified = verified;
    c->seed = seed;
    c->p_conf = p_conf;
    c->pipeline_desc = "base";
    c->tag = 1;
    return c;
}

SepPtr lift_universe(SepPtr base, const HashFamily& h, std::size_t n) {
    std::size_t p = base->p(), q = base->q();
    std::size_t k = p + q;
    if (base->universe() != k * k)
        throw std::invalid_argument("lift requires a base over a (p+q)^2 universe");
    if (h.k != k || h.n != n)
        throw std::invalid_argument("hash family parameters do not match the lift");
    auto c = std::make_shared<LiftedCollection>(n, p, q, base, h);
    c->seed = base->seed;
    c->p_conf = base->p_conf;
    c->pipeline_desc = base->pipeline_desc + "+lift";
    c->tag = 2;
    if (n <= 12 && p + q <= kVerifySizes) {
        auto bad = find_violations(n, p, q,
                                   [&](const BitVec& a) { return c->query(a); });
        for (const auto& [a, b] : bad) c->extras_.push_back(repair_set(n, a, b));
        c->verified = true;
    }
    return c;
}

SepPtr split_compose(const std::vector<SepPtr>& inner, std::size_t n, std::size_t p,
                     std::size_t q, std::size_t s, std::size_t t) {
    if (s < 1 || t < 1) throw std::invalid_argument("split requires s, t >= 1");
    if (inner.size() != s + 1)
        throw std::invalid_argument("split needs inner collections for sizes 0..s");
    if (s * t < p + q)
        throw std::invalid_argument("split requires s*t >= p+q");
    for (std::size_t ph = 0; ph <= s; ++ph) {
        if (!inner[ph] || inner[ph]->universe() != n || inner[ph]->p() != ph ||
            inner[ph]->q() != s - ph)
            throw std::invalid_argument("inner collection for size " + std::to_string(ph) +
                                        " has wrong parameters");
    }
    if (t == 1) return inner[p];
    std::size_t q_tilde = s * t - p;
    auto c = std::make_shared<SplitCollection>(n, p, std::min(q_tilde, n - p), inner, s, t);
    bool all_verified = true;
    for (const auto& ic : inner) all_verified = all_verified && ic->verified;
    c->verified = all_verified;
    c->seed = inner[0]->seed;
    c->p_conf = inner[0]->p_conf;
    c->pipeline_desc = inner[0]->pipeline_desc + "+split";
    c->tag = 3;
    return c;
}

namespace {

SepPtr build_complete(std::size_t n, std::size_t p, std::size_t q) {
    std::vector<BitVec> sets;
    for_each_subset(n, q, BitVec(n), [&](const BitVec& b) {
        BitVec f(n);
        for (std::size_t i = 0; i < n; ++i)
            if (!b.test(i)) f.set(i);
        sets.push_back(f);
    });
    auto c = std::make_shared<ScanCollection>(n, p, q, std::move(sets));
    c->verified = true;
    c->pipeline_desc = "complete";
    c->tag = 4;
    return c;
}

SepPtr build_default(std::size_t n, std::size_t p, std::size_t q, uint64_t seed,
                     unsigned p_conf) {
    std::size_t k = p + q;
    if (n <= k * k || k == 0) {
        auto b = build_base(n, p, q, seed, p_conf);
        return b;
    }
    auto base = build_base(k * k, p, q, seed, p_conf);
    HashFamily h = build_hash_family(n, k, seed ^ 0xa5a5a5a5a5a5a5a5ULL, p_conf);
    return lift_universe(base, h, n);
}

SepPtr build_full(std::size_t n, std::size_t p, std::size_t q, uint64_t seed,
                  unsigned p_conf, int depth) {
    std::size_t k = p + q;
    std::size_t s = k >= 2 ? std::size_t(std::floor(std::pow(std::log2(double(k)), 2.0))) : 0;
    if (depth <= 0 || s < 1 || s >= k || s > n)
        return build_default(n, p, q, seed, p_conf);
    std::size_t t = (k + s - 1) / s;
    if (t <= 1 || s * t > n) return build_default(n, p, q, seed, p_conf);
    std::vector<SepPtr> inner(s + 1);
    for (std::size_t ph = 0; ph <= s; ++ph)
        inner[ph] = build_full(n, ph, s - ph, seed + 131 * (ph + 1), p_conf, depth - 1);
    return split_compose(inner, n, p, q, s, t);
}

} // namespace

SepPtr build_separating_collection(std::size_t n, std::size_t p, std::size_t q,
                                   const SepConfig& config) {
    if (p + q > n) throw std::invalid_argument("separating collection requires p + q <= n");
    switch (config.pipeline) {
        case SepPipeline::Complete:
            return build_complete(n, p, q);
        case SepPipeline::Auto: {
            double c = binom_d(n, q);
            if (c <= double(config.complete_limit)) return build_complete(n, p, q);
            return build_default(n, p, q, config.seed, config.p_conf);
        }
        case SepPipeline::Default:
            return build_default(n, p, q, config.seed, config.p_conf);
        case SepPipeline::Full:
            return build_full(n, p, q, config.seed, config.p_conf, 2);
    }
    throw std::logic_error("unreachable");
}

void write_collection(std::ostream& out, const SeparatingCollection& c) {
    auto sets = c.members();
    auto put32 = [&](uint32_t v) {
        for (int i = 0; i < 4; ++i) out.put(char((v >> (8 * i)) & 0xff));
    };
    auto put64 = [&](uint64_t v) {
        for (int i = 0; i < 8; ++i) out.put(char((v >> (8 * i)) & 0xff));
    };
    put32(uint32_t(c.universe()));
    put32(uint32_t(c.p()));
    put32(uint32_t(c.q()));
    put64(uint64_t(sets.size()));
    out.put(char(c.tag));
    put64(c.seed);
    put32(c.p_conf);
    out.put(char(c.verified ? 1 : 0));
    std::size_t bytes = (c.universe() + 7) / 8;
    for (const auto& f : sets) {
        for (std::size_t i = 0; i < bytes; ++i) {
            unsigned char b = 0;
            for (std::size_t j = 0; j < 8; ++j) {
                std::size_t x = i * 8 + j;
                if (x < c.universe() && f.test(x)) b |= (1u << j);
            }
            out.put(char(b));
        }
    }
}

SepPtr read_collection(std::istream& in) {
    auto get32 = [&]() {
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            int ch = in.get();
            if (ch < 0) throw std::runtime_error("collection file truncated");
            v |= uint32_t(ch & 0xff) << (8 * i);
        }
        return v;
    };
    auto get64 = [&]() {
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            int ch = in.get();
            if (ch < 0) throw std::runtime_error("collection file truncated");
            v |= uint64_t(ch & 0xff) << (8 * i);
        }
        return v;
    };
    uint32_t n = get32(), p = get32(), q = get32();
    uint64_t t = get64();
    int tag = in.get();
    uint64_t seed = get64();
    uint32_t p_conf = get32();
    int verified = in.get();
    if (tag < 0 || verified < 0) throw std::runtime_error("collection file truncated");
    std::size_t bytes = (n + 7) / 8;
    std::vector<BitVec> sets;
    sets.reserve(t);
    for (uint64_t i = 0; i < t; ++i) {
        BitVec f(n);
        for (std::size_t bi = 0; bi < bytes; ++bi) {
            int ch = in.get();
            if (ch < 0) throw std::runtime_error("collection file truncated");
            for (std::size_t j = 0; j < 8; ++j) {
                std::size_t x = bi * 8 + j;
                if (x < n && ((ch >> j) & 1)) f.set(x);
            }
        }
        sets.push_back(f);
    }
    auto c = std::make_shared<ScanCollection>(n, p, q, std::move(sets));
    c->tag = uint8_t(tag);
    c->seed = seed;
    c->p_conf = p_conf;
    c->verified = verified != 0;
    c->pipeline_desc = "loaded";
    return c;
}

WeightedSetFamily rep_uniform(const WeightedSetFamily& s, std::size_t q, Sense sense,
                              const SeparatingCollection& c) {
    if (c.universe() != s.universe() || c.p() != s.set_size() || c.q() < q)
        throw std::invalid_argument("collection parameters do not cover the family");
    std::vector<std::size_t> order(s.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        uint64_t wa = s.weight(a), wb = s.weight(b);
        if (wa != wb) return sense == Sense::Min ? wa < wb : wa > wb;
        return a < b;
    });
    std::unordered_set<BitVec, BitVecHash> used;
    std::vector<std::size_t> keep;
    for (std::size_t si : order) {
        auto fs = c.query(s.set(si));
        for (const auto& f : fs) {
            if (!s.set(si).subset_of(f))
                throw std::logic_error("separating collection violated property (a)");
            if (used.insert(f).second) {
                keep.push_back(si);
                break;
            }
        }
    }
    std::sort(keep.begin(), keep.end());
    return s.select(keep);
}

WeightedSetFamily rep_uniform(const WeightedSetFamily& s, std::size_t q, Sense sense,
                              const SepConfig& config) {
    auto c = build_separating_collection(s.universe(), s.set_size(), q, config);
    return rep_uniform(s, q, sense, *c);
}

WeightedSetFamily rep_uniform_naive(const WeightedSetFamily& s, std::size_t q,
                                    const SepConfig& config) {
    auto c = build_separating_collection(s.universe(), s.set_size(), q, config);
    auto members = c->members();
    std::vector<char> used(members.size(), 0);
    std::vector<std::size_t> keep;
    std::vector<std::size_t> order(s.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return s.weight(a) < s.weight(b);
    });
    for (auto si : order) {
        for (std::size_t fi = 0; fi < members.size(); ++fi) {
            if (used[fi] || !s.set(si).subset_of(members[fi])) continue;
            used[fi] = 1;
            keep.push_back(si);
            break;
        }
    }
    return s.select(keep);
}

} // namespace repfam
