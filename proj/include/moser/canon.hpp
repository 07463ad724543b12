#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <vector>

#include "point.hpp"

namespace moser {

// Integer matrix acting on coefficient vectors (a,b,c,d). The group used
// for canonization is generated by rotation by w1 and the reflection that
// swaps the coefficient vector end for end; it has order 12.
struct LatticeTransform {
    std::array<std::array<int, 4>, 4> m;

    Point apply(Point p) const {
        std::array<std::int64_t, 4> in{p.a, p.b, p.c, p.d}, out{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) out[i] += m[i][j] * in[j];
        return {out[0], out[1], out[2], out[3]};
    }

    friend LatticeTransform operator*(const LatticeTransform& x, const LatticeTransform& y) {
        LatticeTransform r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                int s = 0;
                for (int k = 0; k < 4; ++k) s += x.m[i][k] * y.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    bool operator==(const LatticeTransform&) const = default;
};

inline constexpr LatticeTransform kIdentity{{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}};

// Multiplication by w1 (rotation by 60 degrees), matching rot60.
inline constexpr LatticeTransform kRot{{{{0, -1, 0, 0}, {1, 1, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 1}}}};

// Reflection: fixes the unit circle set {1, w1, w3, w1*w3} by swapping
// 1 <-> w1*w3 and w1 <-> w3.
inline constexpr LatticeTransform kRefl{{{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}}};

// The twelve transforms Rot^i and Rot^i * Refl, i = 0..5.
inline const std::array<LatticeTransform, 12>& symmetry_group() {
    static const std::array<LatticeTransform, 12> g = [] {
        std::array<LatticeTransform, 12> out{};
        LatticeTransform r = kIdentity;
        for (int i = 0; i < 6; ++i) {
            out[i] = r;
            out[6 + i] = r * kRefl;
            r = kRot * r;
        }
        return out;
    }();
    return g;
}

// Sorted point list; the canonical representation of a graph up to the
// symmetry group and translation.
using PointList = std::vector<Point>;

// Canonical form: apply each of the 12 transforms, translate the image so
// every coefficient minimum is zero, sort, and keep the lexicographically
// least sorted sequence. Congruent-by-group point sets map to the same
// canonical form; the translation normalization makes the form independent
// of position.
inline PointList canonize(const PointList& pts) {
    if (pts.empty()) return {};
    PointList best;
    PointList image(pts.size());
    for (const LatticeTransform& t : symmetry_group()) {
        for (size_t i = 0; i < pts.size(); ++i) image[i] = t.apply(pts[i]);
        Point lo = image[0];
        for (const Point& p : image) {
            lo.a = std::min(lo.a, p.a);
            lo.b = std::min(lo.b, p.b);
            lo.c = std::min(lo.c, p.c);
            lo.d = std::min(lo.d, p.d);
        }
        for (Point& p : image) p = p - lo;
        std::sort(image.begin(), image.end());
        if (best.empty() || image < best) best = image;
    }
    return best;
}

// Candidate extension points for the child moves: unit steps from each
// vertex, the two triangle apexes over each unit-distance pair, and
// parallelogram completions xi + xj - xk over unit rhombi.
inline std::set<Point> extension_candidates(const PointList& pts) {
    std::set<Point> cand;
    for (const Point& x : pts)
        for (const Point& u : kUnitSteps) cand.insert(x + u);
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (!is_unit_distance(pts[i], pts[j])) continue;
            Point d = pts[j] - pts[i];
            cand.insert(pts[i] + rot60(d));
            cand.insert(pts[i] + d - rot60(d));
        }
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            for (size_t k = 0; k < pts.size(); ++k) {
                if (k == i || k == j) continue;
                if (!is_unit_distance(pts[i], pts[k])) continue;
                if (!is_unit_distance(pts[j], pts[k])) continue;
                cand.insert(pts[i] + pts[j] - pts[k]);
            }
        }
    for (const Point& x : pts) cand.erase(x);
    return cand;
}

// All canonical forms obtained by adding one candidate point.
inline std::set<PointList> children(const PointList& pts) {
    std::set<PointList> out;
    PointList ext(pts);
    ext.push_back({});
    for (const Point& x : extension_candidates(pts)) {
        ext.back() = x;
        out.insert(canonize(ext));
    }
    return out;
}

// All canonical forms obtained by deleting one vertex.
inline std::set<PointList> parents(const PointList& pts) {
    if (pts.size() < 2) throw std::invalid_argument("parents of a graph with fewer than 2 vertices");
    std::set<PointList> out;
    for (size_t i = 0; i < pts.size(); ++i) {
        PointList rest;
        rest.reserve(pts.size() - 1);
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i) rest.push_back(pts[j]);
        out.insert(canonize(rest));
    }
    return out;
}

}  // namespace moser
