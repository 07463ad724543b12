#pragma once

#include <cstdint>
#include <string>

#include "constraints.hpp"
#include "graph.hpp"
#include "weights.hpp"

namespace moser {

// Membership test for the geometric fractional colouring set gfc(G):
// support on independent sets, exact regularity, and equal aggregate values
// on every spanning congruence pair. All checks exact.
struct GfcReport {
    bool proper = false;
    bool regular = false;
    bool balanced = false;
    std::string message;

    bool ok() const { return proper && regular && balanced; }
};

inline GfcReport verify_colouring_in_gfc(const UnitGraph& g, const WeightFunction& gamma) {
    GfcReport rep;
    rep.proper = true;
    for (const auto& [s, v] : gamma.entries()) {
        if (sgn(v) < 0) {
            rep.proper = false;
            rep.message = "negative weight";
            return rep;
        }
        if (s.empty() || !g.is_independent(s)) {
            rep.proper = false;
            rep.message = "support set is empty or not independent";
            return rep;
        }
    }
    rep.regular = gamma.check_regular(g.n());
    if (!rep.regular) {
        rep.message = "per-vertex weight sums differ from 1";
        return rep;
    }

    ConstraintSystem cs = build_constraints(g);
    for (const auto& row : cs.rows) {
        const VertexSet& y = cs.columns[row.y_col];
        const VertexSet& yp = cs.columns[row.yp_col];
        Rational diff(0);
        for (const auto& [s, v] : gamma.entries()) {
            bool sy = y.subset_of(s);
            bool syp = yp.subset_of(s);
            if (sy && !syp) diff += v;
            if (syp && !sy) diff -= v;
        }
        if (sgn(diff) != 0) {
            rep.message = "aggregate values differ on a congruent pair";
            return rep;
        }
    }
    rep.balanced = true;
    return rep;
}

}  // namespace moser
