#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"
#include "vertex_set.hpp"

namespace moser {

// Nonnegative rational weighting of vertex sets. Used both for fractional
// colourings (weight on independent sets) and for their aggregates. Entries
// with value zero are never stored, so map equality is equality of
// functions.
class WeightFunction {
public:
    using Map = std::map<VertexSet, Rational>;

    WeightFunction() = default;
    explicit WeightFunction(bool regular) : regular_(regular) {}

    Rational value(const VertexSet& s) const {
        auto it = w_.find(s);
        return it == w_.end() ? Rational(0) : it->second;
    }

    void set(const VertexSet& s, Rational v) {
        if (sgn(v) == 0)
            w_.erase(s);
        else
            w_[s] = std::move(v);
    }

    void add(const VertexSet& s, const Rational& v) { set(s, value(s) + v); }

    const Map& entries() const { return w_; }
    size_t support_size() const { return w_.size(); }

    Rational total_weight() const {
        Rational t(0);
        for (const auto& [s, v] : w_) t += v;
        return t;
    }

    // Claimed by producers whose construction guarantees sum-to-one per
    // vertex; check_regular computes the truth.
    bool regular() const { return regular_; }
    void set_regular(bool r) { regular_ = r; }

    bool check_regular(uint32_t n_vertices) const {
        for (uint32_t v = 0; v < n_vertices; ++v) {
            Rational s(0);
            for (const auto& [set, val] : w_)
                if (set.test(v)) s += val;
            if (s != 1) return false;
        }
        return true;
    }

    bool operator==(const WeightFunction& o) const { return w_ == o.w_; }

private:
    Map w_;
    bool regular_ = false;
};

// Aggregate: gbar(S) = sum of gamma(S') over supersets S' of S (non-strict).
// The domain is the downward closure of the support, including the empty
// set, so gbar(empty) is the total weight.
inline WeightFunction aggregate(const WeightFunction& gamma) {
    uint64_t closure = 0;
    for (const auto& [s, v] : gamma.entries()) {
        uint32_t k = s.count();
        if (k > 24) throw std::runtime_error("aggregate: support set too large");
        closure += uint64_t(1) << k;
        if (closure > (uint64_t(1) << 24)) throw std::runtime_error("aggregate: closure too large");
    }
    std::map<VertexSet, Rational> out;
    out[VertexSet{}] = Rational(0);
    for (const auto& [s, v] : gamma.entries()) {
        std::vector<uint32_t> idx = s.indices();
        for (uint64_t mask = 0; mask < (uint64_t(1) << idx.size()); ++mask) {
            VertexSet sub;
            for (size_t i = 0; i < idx.size(); ++i)
                if ((mask >> i) & 1) sub.set(idx[i]);
            out[sub] += v;
        }
    }
    WeightFunction gbar;
    for (auto& [s, v] : out) gbar.set(s, std::move(v));
    // gbar(empty) is the total weight; keep it even though set() drops
    // zeros, by storing through the map only when nonzero (a zero total
    // weight aggregate is empty anyway).
    return gbar;
}

// Moebius inversion of aggregate over the aggregate's own domain:
// gamma(S) = sum over supersets S' in dom of (-1)^(|S'|-|S|) gbar(S').
inline WeightFunction deaggregate(const WeightFunction& gbar) {
    WeightFunction gamma;
    for (const auto& [s, unused] : gbar.entries()) {
        Rational acc(0);
        uint32_t k = s.count();
        for (const auto& [sp, val] : gbar.entries()) {
            if (!s.subset_of(sp)) continue;
            uint32_t diff = sp.count() - k;
            if (diff & 1)
                acc -= val;
            else
                acc += val;
        }
        gamma.add(s, acc);
    }
    return gamma;
}

// Push a colouring of g down to the subgraph induced by h: each support set
// is intersected with h and reindexed to the induced graph's vertex order.
inline WeightFunction restrict_colouring(const WeightFunction& gamma, const VertexSet& h) {
    std::vector<uint32_t> new_index(h.empty() ? 0 : h.indices().back() + 1, 0);
    uint32_t next = 0;
    h.for_each([&](uint32_t old) { new_index[old] = next++; });
    WeightFunction out;
    out.set_regular(gamma.regular());
    for (const auto& [s, v] : gamma.entries()) {
        VertexSet cut;
        s.for_each([&](uint32_t i) {
            if (h.test(i)) cut.set(new_index[i]);
        });
        out.add(cut, v);
    }
    return out;
}

// Weights of a proper colouring: one unit on each colour class.
inline WeightFunction colouring_weights(const std::vector<uint32_t>& colour_of_vertex) {
    std::map<uint32_t, VertexSet> classes;
    for (uint32_t v = 0; v < colour_of_vertex.size(); ++v)
        classes[colour_of_vertex[v]].set(v);
    WeightFunction gamma;
    for (const auto& [c, cls] : classes) gamma.set(cls, Rational(1));
    gamma.set_regular(true);
    return gamma;
}

}  // namespace moser
