#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "point.hpp"
#include "vertex_set.hpp"

namespace moser {

// Unit-distance graph induced by a finite set of lattice points. Vertices
// are stored sorted by coefficient order, so equal point sets produce
// identical graphs and vertex indices are reproducible.
class UnitGraph {
public:
    static UnitGraph build(std::vector<Point> pts) {
        std::sort(pts.begin(), pts.end());
        for (size_t i = 1; i < pts.size(); ++i)
            if (pts[i] == pts[i - 1]) {
                std::ostringstream os;
                os << "duplicate point " << pts[i];
                throw std::invalid_argument(os.str());
            }
        UnitGraph g;
        g.pts_ = std::move(pts);
        g.adj_.resize(g.pts_.size());
        for (uint32_t i = 0; i < g.pts_.size(); ++i)
            for (uint32_t j = i + 1; j < g.pts_.size(); ++j)
                if (is_unit_distance(g.pts_[i], g.pts_[j])) {
                    g.adj_[i].set(j);
                    g.adj_[j].set(i);
                    ++g.edges_;
                }
        return g;
    }

    uint32_t n() const { return uint32_t(pts_.size()); }
    uint64_t edge_count() const { return edges_; }
    Point point(uint32_t i) const { return pts_[i]; }
    const std::vector<Point>& points() const { return pts_; }
    const VertexSet& adjacency(uint32_t i) const { return adj_[i]; }
    bool adjacent(uint32_t i, uint32_t j) const { return adj_[i].test(j); }
    uint32_t degree(uint32_t i) const { return adj_[i].count(); }

    bool is_independent(const VertexSet& s) const {
        bool ok = true;
        s.for_each([&](uint32_t i) { ok = ok && !adj_[i].intersects(s); });
        return ok;
    }

    // Subgraph induced by the vertex set h. New index k corresponds to the
    // k-th lowest member of h; point order is preserved.
    UnitGraph induced(const VertexSet& h) const {
        std::vector<Point> pts;
        h.for_each([&](uint32_t i) { pts.push_back(pts_[i]); });
        return build(std::move(pts));
    }

private:
    std::vector<Point> pts_;
    std::vector<VertexSet> adj_;
    uint64_t edges_ = 0;
};

// All nonempty independent sets, ordered by size and then lexicographically
// on sorted index sequences. This is the column order of every linear
// program built downstream.
inline std::vector<VertexSet> independent_sets(const UnitGraph& g) {
    std::vector<VertexSet> out;
    std::vector<uint32_t> stack;
    // Depth-first over index-increasing extensions; every branch is a valid
    // independent set, so no pruning beyond the adjacency mask is needed.
    auto rec = [&](auto&& self, uint32_t next, VertexSet cur, VertexSet allowed) -> void {
        for (uint32_t v = next; v < g.n(); ++v) {
            if (!allowed.test(v)) continue;
            VertexSet ext = cur;
            ext.set(v);
            out.push_back(ext);
            self(self, v + 1, ext, allowed.and_not(g.adjacency(v)));
        }
    };
    rec(rec, 0, VertexSet{}, VertexSet::full(g.n()));
    std::sort(out.begin(), out.end(), size_lex_less);
    return out;
}

namespace detail {

// Branch and bound maximum clique (Tomita-style greedy colouring bound)
// over an adjacency list given as bitsets. Tracks a witness clique.
class MaxClique {
public:
    explicit MaxClique(std::vector<VertexSet> adj) : adj_(std::move(adj)) {}

    VertexSet run() {
        std::vector<uint32_t> p;
        for (uint32_t i = 0; i < adj_.size(); ++i) p.push_back(i);
        expand(p);
        return best_;
    }

private:
    void expand(std::vector<uint32_t>& p) {
        if (p.empty()) {
            if (cur_.count() > best_.count()) best_ = cur_;
            return;
        }
        // Greedy colouring: vertices grouped into colour classes; a clique
        // takes at most one vertex per class.
        std::vector<uint32_t> order, bound;
        std::vector<VertexSet> classes;
        for (uint32_t v : p) {
            size_t k = 0;
            while (k < classes.size() && classes[k].intersects(adj_[v])) ++k;
            if (k == classes.size()) classes.emplace_back();
            classes[k].set(v);
        }
        for (size_t k = 0; k < classes.size(); ++k)
            classes[k].for_each([&](uint32_t v) {
                order.push_back(v);
                bound.push_back(uint32_t(k) + 1);
            });
        for (size_t idx = order.size(); idx-- > 0;) {
            if (cur_.count() + bound[idx] <= best_.count()) return;
            uint32_t v = order[idx];
            std::vector<uint32_t> next;
            for (size_t j = 0; j < idx; ++j)
                if (adj_[v].test(order[j])) next.push_back(order[j]);
            cur_.set(v);
            expand(next);
            cur_.reset(v);
        }
    }

    std::vector<VertexSet> adj_;
    VertexSet cur_, best_;
};

inline VertexSet complement_clique(const UnitGraph& g) {
    std::vector<VertexSet> co(g.n());
    for (uint32_t i = 0; i < g.n(); ++i)
        for (uint32_t j = 0; j < g.n(); ++j)
            if (i != j && !g.adjacent(i, j)) co[i].set(j);
    return MaxClique(std::move(co)).run();
}

}  // namespace detail

// One maximum independent set, via maximum clique in the complement.
// Deterministic for a given graph.
inline VertexSet maximum_independent_set(const UnitGraph& g) {
    if (g.n() == 0) return {};
    return detail::complement_clique(g);
}

// Exact independence number.
inline uint32_t independence_number(const UnitGraph& g) {
    return maximum_independent_set(g).count();
}

inline Rational independence_ratio(const UnitGraph& g) {
    if (g.n() == 0) throw std::invalid_argument("independence ratio of empty graph");
    return detail::frac(independence_number(g), g.n());
}

// Hall ratio: max over nonempty subsets S of |S| / alpha(G[S]), computed by
// a full subset dynamic program. Memory is one byte per subset.
inline Rational hall_ratio(const UnitGraph& g, uint32_t cap = 20) {
    uint32_t n = g.n();
    if (n == 0) throw std::invalid_argument("hall ratio of empty graph");
    if (n > cap) {
        throw std::runtime_error("hall ratio size cap exceeded: " + std::to_string(n) +
                                 " vertices with cap " + std::to_string(cap));
    }
    std::vector<uint64_t> nbr(n);
    for (uint32_t v = 0; v < n; ++v) nbr[v] = g.adjacency(v).word0() | (uint64_t(1) << v);
    std::vector<uint8_t> alpha(size_t(1) << n, 0);
    uint64_t best_num = 1, best_den = 1;
    for (uint64_t s = 1; s < (uint64_t(1) << n); ++s) {
        uint32_t v = uint32_t(__builtin_ctzll(s));
        uint8_t skip = alpha[s & (s - 1)];
        uint8_t take = uint8_t(1 + alpha[s & ~nbr[v]]);
        alpha[s] = std::max(skip, take);
        uint64_t sz = uint64_t(__builtin_popcountll(s));
        // sz/alpha > best_num/best_den by cross multiplication.
        if (sz * best_den > best_num * alpha[s]) {
            best_num = sz;
            best_den = alpha[s];
        }
    }
    return detail::frac(best_num, best_den);
}

}  // namespace moser
