#include "repfam/setfamily.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace repfam {

std::size_t WeightedSetFamily::add(const BitVec& s, uint64_t w, Sense sense) {
    if (s.universe() != n_) throw std::invalid_argument("set universe mismatch");
    if (s.count() != p_) throw std::invalid_argument("set cardinality mismatch");
    auto it = index_.find(s);
    if (it != index_.end()) {
        uint64_t& cur = weights_[it->second];
        if (sense == Sense::Min ? w < cur : w > cur) cur = w;
        return it->second;
    }
    sets_.push_back(s);
    weights_.push_back(w);
    index_.emplace(s, sets_.size() - 1);
    return sets_.size() - 1;
}

WeightedSetFamily WeightedSetFamily::select(const std::vector<std::size_t>& indices) const {
    WeightedSetFamily out(n_, p_);
    for (auto i : indices) {
        if (i >= sets_.size()) throw std::out_of_range("family index out of range");
        out.add(sets_[i], weights_[i]);
    }
    return out;
}

SerializedFamily read_family(std::istream& in) {
    std::string line;
    std::size_t p = 0, q = 0, n = 0, t = 0;
    if (!std::getline(in, line)) throw std::runtime_error("family file: missing header");
    {
        std::istringstream hs(line);
        if (!(hs >> p >> q >> n >> t))
            throw std::runtime_error("family file: bad header, expected 'p q n t'");
    }
    SerializedFamily out;
    out.family = WeightedSetFamily(n, p);
    out.q = q;
    for (std::size_t row = 0; row < t; ++row) {
        if (!std::getline(in, line))
            throw std::runtime_error("family file: truncated at set " + std::to_string(row));
        std::istringstream ls(line);
        uint64_t w;
        if (!(ls >> w))
            throw std::runtime_error("family file: bad weight on set " + std::to_string(row));
        BitVec s(n);
        for (std::size_t j = 0; j < p; ++j) {
            std::size_t idx;
            if (!(ls >> idx) || idx >= n)
                throw std::runtime_error("family file: bad index on set " + std::to_string(row));
            s.set(idx);
        }
        if (s.count() != p)
            throw std::runtime_error("family file: repeated index on set " + std::to_string(row));
        out.family.add(s, w);
    }
    return out;
}

void write_family(std::ostream& out, const WeightedSetFamily& f, std::size_t q) {
    out << f.set_size() << ' ' << q << ' ' << f.universe() << ' ' << f.size() << '\n';
    for (std::size_t i = 0; i < f.size(); ++i) {
        out << f.weight(i);
        for (auto e : f.set(i).elements()) out << ' ' << e;
        out << '\n';
    }
}

} // namespace repfam
