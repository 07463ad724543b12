#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "graph.hpp"
#include "point.hpp"
#include "vertex_set.hpp"

namespace moser {

namespace detail {

// Backtracking search for a bijection [0,n) -> [0,n) that carries the
// pairwise distance table of A onto that of B. distA/distB return values
// comparable with ==.
template <typename DA, typename DB>
bool congruent_by_bijection(size_t n, DA distA, DB distB) {
    std::vector<uint32_t> map_to(n);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, size_t i) -> bool {
        if (i == n) return true;
        for (uint32_t t = 0; t < n; ++t) {
            if (used[t]) continue;
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j)
                ok = distA(i, j) == distB(t, map_to[j]);
            if (!ok) continue;
            used[t] = true;
            map_to[i] = t;
            if (self(self, i + 1)) return true;
            used[t] = false;
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace detail

// Distance multiset fingerprint: congruent sets agree on it, so unequal
// keys prove non-congruence. Equal keys still require a bijection check
// (homometric point sets exist).
struct CongruenceKey {
    uint32_t size = 0;
    std::vector<QuadValue> dists;  // sorted

    bool operator==(const CongruenceKey&) const = default;
};

inline CongruenceKey congruence_key(std::span<const Point> pts) {
    CongruenceKey k;
    k.size = uint32_t(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) k.dists.push_back(sq_dist(pts[i], pts[j]));
    std::sort(k.dists.begin(), k.dists.end());
    return k;
}

// Exact congruence: some bijection preserves all pairwise distances. Since
// both sets live in the plane, such a bijection extends to an isometry.
inline bool are_congruent(std::span<const Point> a, std::span<const Point> b) {
    if (a.size() != b.size()) return false;
    if (a.size() <= 1) return true;
    if (congruence_key(a) != congruence_key(b)) return false;
    return detail::congruent_by_bijection(
        a.size(), [&](size_t i, size_t j) { return sq_dist(a[i], a[j]); },
        [&](size_t i, size_t j) { return sq_dist(b[i], b[j]); });
}

// Partition of the given vertex sets of g into congruence classes of the
// corresponding point sets. Returns classes as ascending index lists into
// `sets`, ordered by their least member. Only classes of two or more sets
// matter downstream, but all are reported.
//
// Distances are compressed to small ids first; the id matrix preserves
// exact equality, so key grouping and the bijection refinement within a
// key bucket are both exact.
inline std::vector<std::vector<uint32_t>> congruence_classes(const UnitGraph& g,
                                                             const std::vector<VertexSet>& sets) {
    uint32_t n = g.n();
    std::map<QuadValue, uint16_t> id_of;
    std::vector<uint16_t> dist_id(size_t(n) * n, 0);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j) {
            QuadValue q = sq_dist(g.point(i), g.point(j));
            uint16_t id = id_of.try_emplace(q, uint16_t(id_of.size() + 1)).first->second;
            dist_id[size_t(i) * n + j] = dist_id[size_t(j) * n + i] = id;
        }

    struct KeyHash {
        size_t operator()(const std::vector<uint16_t>& v) const {
            size_t h = 0xcbf29ce484222325ull;
            for (uint16_t x : v) h = (h ^ x) * 0x100000001b3ull;
            return h;
        }
    };

    // Bucket by sorted id multiset (prefixed with the size), then refine
    // each bucket into true congruence classes.
    std::unordered_map<std::vector<uint16_t>, std::vector<uint32_t>, KeyHash> buckets;
    std::vector<std::vector<uint32_t>> members(sets.size());
    for (uint32_t s = 0; s < sets.size(); ++s) {
        members[s] = sets[s].indices();
        std::vector<uint16_t> key;
        key.reserve(1 + members[s].size() * (members[s].size() - 1) / 2);
        key.push_back(uint16_t(members[s].size()));
        for (size_t i = 0; i < members[s].size(); ++i)
            for (size_t j = i + 1; j < members[s].size(); ++j)
                key.push_back(dist_id[size_t(members[s][i]) * n + members[s][j]]);
        std::sort(key.begin() + 1, key.end());
        buckets[std::move(key)].push_back(s);
    }

    auto congruent_sets = [&](uint32_t sa, uint32_t sb) {
        const auto& va = members[sa];
        const auto& vb = members[sb];
        if (va.size() <= 1) return true;
        return detail::congruent_by_bijection(
            va.size(),
            [&](size_t i, size_t j) { return dist_id[size_t(va[i]) * n + va[j]]; },
            [&](size_t i, size_t j) { return dist_id[size_t(vb[i]) * n + vb[j]]; });
    };

    std::vector<std::vector<uint32_t>> classes;
    for (auto& [key, bucket] : buckets) {
        std::sort(bucket.begin(), bucket.end());
        size_t first_class = classes.size();
        for (uint32_t s : bucket) {
            bool placed = false;
            for (size_t c = first_class; c < classes.size() && !placed; ++c)
                if (congruent_sets(classes[c][0], s)) {
                    classes[c].push_back(s);
                    placed = true;
                }
            if (!placed) classes.push_back({s});
        }
    }
    std::sort(classes.begin(), classes.end(),
              [](const auto& x, const auto& y) { return x[0] < y[0]; });
    return classes;
}

}  // namespace moser
