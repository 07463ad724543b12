#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "lp_model.hpp"
#include "rational.hpp"

namespace moser {

// Dense two-phase simplex over an ordered field. Scalar is Rational (exact
// run: zero tolerances, Bland's rule throughout, guaranteed termination) or
// double (numeric run: Dantzig pricing with a Bland fallback against
// cycling). Free variables are split, rows with negative right-hand side
// are negated, and every row receives an identity column: a slack for <=,
// an artificial for >= and =. Artificial columns are kept through phase two
// (blocked from entering) because their reduced costs are the duals.
template <typename Scalar>
class Simplex {
public:
    struct Options {
        Scalar opt_tol{};    // entering threshold on reduced costs
        Scalar pivot_tol{};  // minimum usable pivot magnitude
        Scalar feas_tol{};   // phase-1 objective threshold
        bool bland = true;
        uint64_t max_iter = 2'000'000;
    };

    struct Result {
        SolveStatus status = SolveStatus::numeric_failure;
        Scalar objective{};
        std::vector<Scalar> x;  // per model variable
        std::vector<Scalar> y;  // per model row
        uint64_t iterations = 0;
        std::string message;
    };

    static Result solve(const LPModel& model, Options opt) {
        model.check();
        Simplex s(model, opt);
        return s.run();
    }

private:
    Simplex(const LPModel& model, Options opt) : model_(model), opt_(opt) { build(); }

    static Scalar from_rational(const Rational& r) {
        if constexpr (std::is_same_v<Scalar, Rational>)
            return r;
        else
            return Scalar(r.get_d());
    }

    void build() {
        uint32_t nv = model_.n_vars;
        var_col_.resize(nv);
        uint32_t col = 0;
        for (uint32_t v = 0; v < nv; ++v) {
            var_col_[v] = col;
            col += model_.free_var[v] ? 2 : 1;
        }
        n_struct_ = col;

        uint32_t m = uint32_t(model_.rows.size());
        std::vector<int8_t> flip(m, 0);
        uint32_t n_slack = 0, n_art = 0;
        for (uint32_t i = 0; i < m; ++i) {
            Relation rel = model_.rows[i].rel;
            if (sgn_rhs(i) < 0) {
                flip[i] = 1;
                rel = rel == Relation::le ? Relation::ge : rel == Relation::ge ? Relation::le : rel;
            }
            if (rel == Relation::le)
                ++n_slack;
            else
                ++n_art;
            if (rel == Relation::ge) ++n_slack;  // surplus column
        }
        n_cols_ = n_struct_ + n_slack + n_art;
        art_begin_ = n_cols_ - n_art;
        width_ = n_cols_ + 1;

        tab_.assign(size_t(m) * width_, Scalar{});
        z1_.assign(width_, Scalar{});
        z2_.assign(width_, Scalar{});
        basis_.resize(m);
        row_flip_ = std::move(flip);
        orig_row_.resize(m);
        id_col_.assign(m, UINT32_MAX);

        uint32_t next_extra = n_struct_, next_art = art_begin_;
        for (uint32_t i = 0; i < m; ++i) {
            orig_row_[i] = i;
            const auto& row = model_.rows[i];
            Scalar sign = row_flip_[i] ? Scalar(-1) : Scalar(1);
            for (const auto& t : row.terms) {
                Scalar val = sign * Scalar(t.coeff);
                at(i, var_col_[t.var]) += val;
                if (model_.free_var[t.var]) at(i, var_col_[t.var] + 1) -= val;
            }
            at(i, n_cols_) = sign * from_rational(row.rhs);
            Relation rel = row.rel;
            if (row_flip_[i])
                rel = rel == Relation::le ? Relation::ge : rel == Relation::ge ? Relation::le : rel;
            if (rel == Relation::le) {
                at(i, next_extra) = Scalar(1);
                basis_[i] = next_extra;
                id_col_[i] = next_extra;
                ++next_extra;
            } else {
                if (rel == Relation::ge) {
                    at(i, next_extra) = Scalar(-1);
                    ++next_extra;
                }
                at(i, next_art) = Scalar(1);
                basis_[i] = next_art;
                id_col_[i] = next_art;
                ++next_art;
            }
        }
        m_rows_ = m;

        for (uint32_t v = 0; v < nv; ++v) {
            Scalar c = from_rational(model_.objective[v]);
            z2_[var_col_[v]] += c;
            if (model_.free_var[v]) z2_[var_col_[v] + 1] -= c;
        }
        // Phase-1 costs: 1 on artificials; reduce against the basic ones.
        for (uint32_t j = art_begin_; j < n_cols_; ++j) z1_[j] = Scalar(1);
        for (uint32_t i = 0; i < m_rows_; ++i)
            if (basis_[i] >= art_begin_)
                for (uint32_t j = 0; j < width_; ++j) z1_[j] -= at(i, j);
    }

    int sgn_rhs(uint32_t i) const {
        if constexpr (std::is_same_v<Scalar, Rational>)
            return sgn(model_.rows[i].rhs);
        else
            return model_.rows[i].rhs.get_d() < 0 ? -1 : 1;
    }

    Scalar& at(uint32_t r, uint32_t c) { return tab_[size_t(r) * width_ + c]; }
    const Scalar& at(uint32_t r, uint32_t c) const { return tab_[size_t(r) * width_ + c]; }

    static bool less(const Scalar& a, const Scalar& b) { return a < b; }

    void pivot(uint32_t prow, uint32_t pcol, std::vector<Scalar>& zA, std::vector<Scalar>* zB) {
        Scalar inv = Scalar(1) / at(prow, pcol);
        for (uint32_t j = 0; j < width_; ++j) at(prow, j) *= inv;
        at(prow, pcol) = Scalar(1);
        for (uint32_t r = 0; r < m_rows_; ++r) {
            if (r == prow) continue;
            Scalar f = at(r, pcol);
            if (is_zero(f)) continue;
            for (uint32_t j = 0; j < width_; ++j) at(r, j) -= f * at(prow, j);
            at(r, pcol) = Scalar{};
        }
        apply_obj(zA, prow, pcol);
        if (zB) apply_obj(*zB, prow, pcol);
        basis_[prow] = pcol;
    }

    void apply_obj(std::vector<Scalar>& z, uint32_t prow, uint32_t pcol) {
        Scalar f = z[pcol];
        if (is_zero(f)) return;
        for (uint32_t j = 0; j < width_; ++j) z[j] -= f * at(prow, j);
        z[pcol] = Scalar{};
    }

    bool is_zero(const Scalar& x) const {
        if constexpr (std::is_same_v<Scalar, Rational>)
            return sgn(x) == 0;
        else
            return x == 0.0;
    }

    // One simplex phase on objective row z. Entering columns below
    // `limit` only (phase 2 blocks artificials). Returns status.
    SolveStatus phase(std::vector<Scalar>& z, std::vector<Scalar>* z_other, uint32_t limit,
                      uint64_t& iters) {
        bool bland = opt_.bland;
        uint64_t stall = 0;
        Scalar last_obj = z[n_cols_];
        while (true) {
            if (iters++ > opt_.max_iter) return SolveStatus::numeric_failure;
            uint32_t enter = UINT32_MAX;
            if (bland) {
                for (uint32_t j = 0; j < limit; ++j)
                    if (less(z[j], -opt_.opt_tol)) {
                        enter = j;
                        break;
                    }
            } else {
                Scalar best = -opt_.opt_tol;
                for (uint32_t j = 0; j < limit; ++j)
                    if (less(z[j], best)) {
                        best = z[j];
                        enter = j;
                    }
            }
            if (enter == UINT32_MAX) return SolveStatus::optimal;

            uint32_t leave = UINT32_MAX;
            Scalar best_ratio{};
            for (uint32_t i = 0; i < m_rows_; ++i) {
                const Scalar& a = at(i, enter);
                if (!less(opt_.pivot_tol, a)) continue;
                Scalar ratio = at(i, n_cols_) / a;
                bool take = false;
                if (leave == UINT32_MAX || less(ratio, best_ratio))
                    take = true;
                else if (!less(best_ratio, ratio) && basis_[i] < basis_[leave])
                    take = true;  // ratio tie: smallest basis index (Bland-safe)
                if (take) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == UINT32_MAX) return SolveStatus::unbounded;
            pivot(leave, enter, z, z_other);

            if (!bland) {
                // Numeric anti-cycling: long objective stall flips to Bland.
                // The stored row is -objective, so improvement raises it.
                if (less(last_obj, z[n_cols_])) {
                    stall = 0;
                    last_obj = z[n_cols_];
                } else if (++stall > 1000) {
                    bland = true;
                }
            }
        }
    }

    Result run() {
        Result res;
        uint64_t iters = 0;

        SolveStatus s1 = SolveStatus::optimal;
        if (art_begin_ < n_cols_) s1 = phase(z1_, &z2_, art_begin_, iters);
        if (s1 != SolveStatus::optimal) {
            // Phase 1 is bounded below by zero, so anything but optimal is a
            // numeric breakdown.
            res.status = SolveStatus::numeric_failure;
            res.message = "phase 1 did not reach an optimum";
            res.iterations = iters;
            return res;
        }
        // Phase-1 value is -z1[rhs]; positive means infeasible.
        Scalar p1 = -z1_[n_cols_];
        if (less(opt_.feas_tol, p1)) {
            res.status = SolveStatus::infeasible;
            res.iterations = iters;
            return res;
        }
        // Drive basic artificials out; rows that cannot pivot are redundant
        // and deleted so later pivots cannot disturb feasibility.
        for (uint32_t i = 0; i < m_rows_;) {
            if (basis_[i] < art_begin_) {
                ++i;
                continue;
            }
            uint32_t pcol = UINT32_MAX;
            for (uint32_t j = 0; j < art_begin_ && pcol == UINT32_MAX; ++j) {
                const Scalar& a = at(i, j);
                if (less(opt_.pivot_tol, a) || less(a, -opt_.pivot_tol)) pcol = j;
            }
            if (pcol != UINT32_MAX) {
                pivot(i, pcol, z1_, &z2_);
                ++i;
            } else {
                delete_row(i);
            }
        }

        SolveStatus s2 = phase(z2_, nullptr, art_begin_, iters);
        res.iterations = iters;
        if (s2 != SolveStatus::optimal) {
            res.status = s2;
            if (s2 == SolveStatus::numeric_failure) res.message = "iteration limit in phase 2";
            return res;
        }

        res.status = SolveStatus::optimal;
        res.objective = -z2_[n_cols_];
        std::vector<Scalar> col_val(n_cols_, Scalar{});
        for (uint32_t i = 0; i < m_rows_; ++i) col_val[basis_[i]] = at(i, n_cols_);
        res.x.resize(model_.n_vars);
        for (uint32_t v = 0; v < model_.n_vars; ++v) {
            res.x[v] = col_val[var_col_[v]];
            if (model_.free_var[v]) res.x[v] -= col_val[var_col_[v] + 1];
        }
        res.y.assign(model_.rows.size(), Scalar{});
        for (uint32_t i = 0; i < m_rows_; ++i) {
            uint32_t orig = orig_row_[i];
            // Identity column of the row: slack (+1) or artificial (+1);
            // its phase-2 reduced cost is -y.
            Scalar y = -z2_[id_col_[i]];
            res.y[orig] = row_flip_[orig] ? -y : y;
        }
        return res;
    }

    void delete_row(uint32_t i) {
        uint32_t last = m_rows_ - 1;
        if (i != last) {
            for (uint32_t j = 0; j < width_; ++j) at(i, j) = at(last, j);
            basis_[i] = basis_[last];
            orig_row_[i] = orig_row_[last];
            // id_col_ indexes tableau rows in lockstep with orig_row_.
            id_col_[i] = id_col_[last];
        }
        --m_rows_;
    }

    const LPModel& model_;
    Options opt_;
    std::vector<Scalar> tab_, z1_, z2_;
    std::vector<uint32_t> basis_, var_col_, orig_row_, id_col_;
    std::vector<int8_t> row_flip_;
    uint32_t n_struct_ = 0, n_cols_ = 0, art_begin_ = 0, width_ = 0, m_rows_ = 0;
};

}  // namespace moser
