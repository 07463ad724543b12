#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "constraints.hpp"
#include "graph.hpp"
#include "rational.hpp"

namespace moser {

enum class Relation { le, eq, ge };

// Linear program, exact by construction:  min c.x  subject to rows, with
// each variable either nonnegative or free. Coefficients in our models are
// always small integers; right-hand sides are rationals.
struct LPModel {
    struct Term {
        uint32_t var;
        int32_t coeff;
    };
    struct Row {
        std::vector<Term> terms;
        Relation rel;
        Rational rhs;
    };

    uint32_t n_vars = 0;
    std::vector<Rational> objective;  // dense, size n_vars
    std::vector<Row> rows;
    std::vector<uint8_t> free_var;  // size n_vars; 0 means x >= 0

    void check() const {
        if (objective.size() != n_vars || free_var.size() != n_vars)
            throw std::logic_error("LP model arrays inconsistent with n_vars");
    }
};

enum class SolveStatus { optimal, infeasible, unbounded, numeric_failure };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unbounded: return "unbounded";
        default: return "numeric-failure";
    }
}

// Solver result. Exact solves fill primal/dual/objective with true
// rationals; numeric solves store dyadic conversions of the doubles and
// report their residuals.
struct Solution {
    SolveStatus status = SolveStatus::numeric_failure;
    Rational objective;
    std::vector<Rational> primal;
    std::vector<Rational> dual;  // one multiplier per model row
    bool exact = false;
    double max_residual = 0.0;  // numeric only: worst constraint violation
    std::string message;
};

// Fractional chromatic number LP over the nonempty independent sets:
//   min sum x_S   s.t.  sum_{S containing v} x_S >= 1 for all v,  x >= 0.
inline LPModel chi_f_model(const UnitGraph& g, const std::vector<VertexSet>& sets) {
    LPModel m;
    m.n_vars = uint32_t(sets.size());
    m.objective.assign(m.n_vars, Rational(1));
    m.free_var.assign(m.n_vars, 0);
    m.rows.resize(g.n());
    for (uint32_t v = 0; v < g.n(); ++v) {
        m.rows[v].rel = Relation::ge;
        m.rows[v].rhs = 1;
    }
    for (uint32_t j = 0; j < sets.size(); ++j)
        sets[j].for_each([&](uint32_t v) { m.rows[v].terms.push_back({j, 1}); });
    return m;
}

// Geometric fractional chromatic number LP:
//   min 1.x  s.t.  e.x = 1,  Cx = 0,  x >= 0,
// where e marks columns whose set contains vertex 0 and C is the congruence
// constraint matrix. Row 0 of the model is the e row; model row 1+r is
// constraint row r.
inline LPModel chi_gf_model(const ConstraintSystem& cs, const SparseConstraints& sp) {
    LPModel m;
    m.n_vars = uint32_t(cs.n_cols());
    m.objective.assign(m.n_vars, Rational(1));
    m.free_var.assign(m.n_vars, 0);
    m.rows.resize(1 + cs.n_rows());
    m.rows[0].rel = Relation::eq;
    m.rows[0].rhs = 1;
    for (uint32_t j : cs.e_cols) m.rows[0].terms.push_back({j, 1});
    for (size_t r = 0; r < cs.n_rows(); ++r) {
        LPModel::Row& row = m.rows[1 + r];
        row.rel = Relation::eq;
        row.rhs = 0;
        for (uint64_t p = sp.plus_begin[r]; p < sp.plus_begin[r + 1]; ++p)
            row.terms.push_back({sp.plus[p], 1});
        for (uint64_t q = sp.minus_begin[r]; q < sp.minus_begin[r + 1]; ++q)
            row.terms.push_back({sp.minus[q], -1});
    }
    return m;
}

// Maximum margin dual program for a target t:
//   min s  s.t.  (y^T C)_j >= t e_j - 1 for every column j,
//                -s <= y_r <= s  for every row r,  s >= 0.
// Variables: y_0..y_{m-1} free, then s. Feasible with value min over
// the max norm because s bounds every |y_r|.
inline LPModel max_margin_model(const ConstraintSystem& cs, const SparseConstraints& sp,
                                const Rational& target) {
    LPModel m;
    uint32_t nrows = uint32_t(cs.n_rows());
    m.n_vars = nrows + 1;
    m.objective.assign(m.n_vars, Rational(0));
    m.objective[nrows] = 1;
    m.free_var.assign(m.n_vars, 1);
    m.free_var[nrows] = 0;

    // Transpose the sparse rows into per-column term lists.
    std::vector<std::vector<LPModel::Term>> col_terms(cs.n_cols());
    for (uint32_t r = 0; r < nrows; ++r) {
        for (uint64_t p = sp.plus_begin[r]; p < sp.plus_begin[r + 1]; ++p)
            col_terms[sp.plus[p]].push_back({r, 1});
        for (uint64_t q = sp.minus_begin[r]; q < sp.minus_begin[r + 1]; ++q)
            col_terms[sp.minus[q]].push_back({r, -1});
    }
    std::vector<uint8_t> in_e(cs.n_cols(), 0);
    for (uint32_t j : cs.e_cols) in_e[j] = 1;

    m.rows.reserve(cs.n_cols() + 2 * nrows);
    for (uint32_t j = 0; j < cs.n_cols(); ++j) {
        LPModel::Row row;
        row.terms = std::move(col_terms[j]);
        row.rel = Relation::ge;
        row.rhs = (in_e[j] ? target : Rational(0)) - 1;
        m.rows.push_back(std::move(row));
    }
    for (uint32_t r = 0; r < nrows; ++r) {
        m.rows.push_back({{{r, 1}, {nrows, -1}}, Relation::le, Rational(0)});
        m.rows.push_back({{{r, -1}, {nrows, -1}}, Relation::le, Rational(0)});
    }
    return m;
}

}  // namespace moser
