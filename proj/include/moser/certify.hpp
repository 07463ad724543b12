#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "canon.hpp"
#include "constraints.hpp"
#include "lp.hpp"
#include "rational.hpp"

namespace moser {

// Rational dual vector certifying chi_gf(G) >= target via
//   y^T C - target * e + 1 >= 0 componentwise:
// any feasible colouring x (x >= 0, e.x = 1, Cx = 0) then satisfies
// 1.x >= (target*e - y^T C).x = target.
struct DualWitness {
    Rational target;
    std::vector<Rational> y;  // one entry per constraint row
};

// Exact column slacks (y^T C - t*e + 1) computed over a common denominator:
// with y_r = num_r / D the slack numerator of column j is
// sum over rows of sign * num_r minus D*(t*e_j - 1).
inline std::vector<Rational> column_slacks(const SparseConstraints& sp,
                                           const std::vector<uint32_t>& e_cols, size_t n_cols,
                                           const std::vector<Rational>& y, const Rational& t) {
    size_t m = sp.plus_begin.size() - 1;
    if (y.size() != m) throw std::invalid_argument("witness length does not match row count");
    Integer den(1);
    for (const Rational& v : y) den = lcm(den, v.get_den());
    std::vector<Integer> num(m);
    for (size_t r = 0; r < m; ++r) num[r] = y[r].get_num() * (den / y[r].get_den());

    std::vector<Integer> acc(n_cols, Integer(0));
    for (size_t r = 0; r < m; ++r) {
        const Integer& nr = num[r];
        if (sgn(nr) == 0) continue;
        for (uint64_t p = sp.plus_begin[r]; p < sp.plus_begin[r + 1]; ++p) acc[sp.plus[p]] += nr;
        for (uint64_t q = sp.minus_begin[r]; q < sp.minus_begin[r + 1]; ++q) acc[sp.minus[q]] -= nr;
    }
    Rational base = 1 - t;  // -(t*e_j - 1) with e_j = 1
    std::vector<Rational> slack(n_cols);
    std::vector<uint8_t> in_e(n_cols, 0);
    for (uint32_t j : e_cols) in_e[j] = 1;
    for (size_t j = 0; j < n_cols; ++j) {
        Rational s(acc[j], den);
        s.canonicalize();
        slack[j] = s + (in_e[j] ? base : Rational(1));
    }
    return slack;
}

inline bool check_witness(const SparseConstraints& sp, const std::vector<uint32_t>& e_cols,
                          size_t n_cols, const DualWitness& w) {
    std::vector<Rational> slack = column_slacks(sp, e_cols, n_cols, w.y, w.target);
    for (const Rational& s : slack)
        if (sgn(s) < 0) return false;
    return true;
}

// Columns within eps of tight, with every violated column included; on an
// exact dual optimum and eps = 0 this is precisely the active set.
inline std::vector<uint32_t> sharp_set(const std::vector<Rational>& slack, const Rational& eps) {
    std::vector<uint32_t> out;
    for (uint32_t j = 0; j < slack.size(); ++j)
        if (sgn(slack[j]) < 0 || slack[j] <= eps) out.push_back(j);
    return out;
}

namespace detail {

// Any exact solution of M x = r by Gauss elimination with column pivoting.
// Consistent rank-deficient systems return one particular solution (free
// variables zero), which is all the caller needs: the projection A^T x is
// identical for every solution.
struct LinSolve {
    bool consistent = false;
    uint32_t rank = 0;
    std::vector<Rational> x;
};

inline LinSolve solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    size_t n = a.size();
    size_t cols = n == 0 ? 0 : a[0].size();
    std::vector<uint32_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < n; ++col) {
        size_t pr = row;
        while (pr < n && sgn(a[pr][col]) == 0) ++pr;
        if (pr == n) continue;
        std::swap(a[pr], a[row]);
        std::swap(b[pr], b[row]);
        Rational inv = 1 / a[row][col];
        for (size_t j = col; j < cols; ++j) a[row][j] *= inv;
        b[row] *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == row) continue;
            Rational f = a[i][col];  // by value: the loop below overwrites the entry
            if (sgn(f) == 0) continue;
            for (size_t j = col; j < cols; ++j)
                if (sgn(a[row][j]) != 0) a[i][j] -= f * a[row][j];
            b[i] -= f * b[row];
            a[i][col] = 0;
        }
        pivot_col.push_back(uint32_t(col));
        ++row;
    }
    LinSolve out;
    out.rank = uint32_t(row);
    for (size_t i = row; i < n; ++i)
        if (sgn(b[i]) != 0) return out;  // inconsistent
    out.consistent = true;
    out.x.assign(cols, Rational(0));
    for (size_t i = 0; i < row; ++i) out.x[pivot_col[i]] = b[i];
    return out;
}

}  // namespace detail

// Orthogonal projection of ybar onto the affine space {y : A y = b} where
// row k of A is constraint column sharp[k] of C and b_k = t*e_j - 1:
//   y = ybar - A^T lambda,  (A A^T) lambda = A ybar - b.
// Throws if the sharp system is inconsistent (the sharp set then does not
// support target t and certification must fail loudly).
inline std::vector<Rational> project_to_witness(const SparseConstraints& sp,
                                                const std::vector<uint32_t>& e_cols, size_t n_cols,
                                                const std::vector<Rational>& ybar,
                                                const Rational& t,
                                                const std::vector<uint32_t>& sharp) {
    size_t m = sp.plus_begin.size() - 1;
    size_t k = sharp.size();
    if (k == 0) return ybar;

    // Dense signed incidence of the sharp columns: arows[i][r] in {-1,0,1}.
    std::vector<uint8_t> in_e(n_cols, 0);
    for (uint32_t j : e_cols) in_e[j] = 1;
    std::vector<std::vector<int8_t>> arows(k, std::vector<int8_t>(m, 0));
    std::vector<uint32_t> which(n_cols, UINT32_MAX);
    for (uint32_t i = 0; i < k; ++i) which[sharp[i]] = i;
    for (size_t r = 0; r < m; ++r) {
        for (uint64_t p = sp.plus_begin[r]; p < sp.plus_begin[r + 1]; ++p) {
            uint32_t i = which[sp.plus[p]];
            if (i != UINT32_MAX) arows[i][r] = 1;
        }
        for (uint64_t q = sp.minus_begin[r]; q < sp.minus_begin[r + 1]; ++q) {
            uint32_t i = which[sp.minus[q]];
            if (i != UINT32_MAX) arows[i][r] = -1;
        }
    }

    // Gram matrix M = A A^T over integers, and rhs = A ybar - b.
    std::vector<std::vector<Rational>> gram(k, std::vector<Rational>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i; j < k; ++j) {
            long dot = 0;
            for (size_t r = 0; r < m; ++r) dot += long(arows[i][r]) * arows[j][r];
            gram[i][j] = gram[j][i] = Rational(dot);
        }
    std::vector<Rational> rhs(k);
    for (size_t i = 0; i < k; ++i) {
        Rational dot(0);
        for (size_t r = 0; r < m; ++r) {
            int8_t s = arows[i][r];
            if (s == 1)
                dot += ybar[r];
            else if (s == -1)
                dot -= ybar[r];
        }
        Rational b = (in_e[sharp[i]] ? t : Rational(0)) - 1;
        rhs[i] = dot - b;
    }

    detail::LinSolve ls = detail::solve_linear(std::move(gram), std::move(rhs));
    if (!ls.consistent)
        throw std::runtime_error("sharp constraint system is inconsistent; no witness at this target");
    std::vector<Rational> y = ybar;
    for (size_t i = 0; i < k; ++i) {
        if (sgn(ls.x[i]) == 0) continue;
        for (size_t r = 0; r < m; ++r) {
            int8_t s = arows[i][r];
            if (s == 1)
                y[r] -= ls.x[i];
            else if (s == -1)
                y[r] += ls.x[i];
        }
    }
    return y;
}

struct CertifyOptions {
    SolveOptions solve;                               // backend for the max-margin LP
    Rational eps = make_rational(1, 1000000000000L);  // sharp threshold 10^-12
};

struct CertifyReport {
    bool verdict = false;
    DualWitness witness;
    size_t sharp_count = 0;
    double margin = 0.0;  // numeric max-margin objective
    size_t violated_before_projection = 0;
    std::string message;
};

// Full pipeline: numeric max-margin dual, exact rationalization, sharp-set
// detection, exact projection onto the sharp equalities, exact check.
inline CertifyReport certify(const ConstraintSystem& cs, const SparseConstraints& sp,
                             const Rational& target, const CertifyOptions& opt = {}) {
    CertifyReport rep;
    LPModel margin = max_margin_model(cs, sp, target);
    Solution sol = opt.solve.mode == SolveMode::external ? solve_external(margin, opt.solve)
                                                         : solve_numeric(margin, opt.solve);
    if (sol.status != SolveStatus::optimal) {
        rep.message = "max-margin solve failed: " + std::string(to_string(sol.status)) +
                      (sol.message.empty() ? "" : " (" + sol.message + ")");
        return rep;
    }
    size_t m = cs.n_rows();
    rep.margin = sol.primal[m].get_d();
    std::vector<Rational> ybar(sol.primal.begin(), sol.primal.begin() + m);

    std::vector<Rational> slack = column_slacks(sp, cs.e_cols, cs.n_cols(), ybar, target);
    for (const Rational& s : slack)
        if (sgn(s) < 0) ++rep.violated_before_projection;
    std::vector<uint32_t> sharp = sharp_set(slack, opt.eps);
    rep.sharp_count = sharp.size();

    DualWitness w;
    w.target = target;
    try {
        w.y = project_to_witness(sp, cs.e_cols, cs.n_cols(), ybar, target, sharp);
    } catch (const std::exception& e) {
        rep.message = e.what();
        return rep;
    }
    rep.verdict = check_witness(sp, cs.e_cols, cs.n_cols(), w);
    rep.witness = std::move(w);
    if (!rep.verdict) rep.message = "projected witness fails the exact check";
    return rep;
}

// Witness file: "target <rational>" then one rational per row.
inline void write_witness(std::ostream& os, const DualWitness& w) {
    os << "target " << w.target.get_str() << "\n";
    for (const Rational& v : w.y) os << v.get_str() << "\n";
}

inline DualWitness read_witness(std::istream& is) {
    DualWitness w;
    std::string key, val;
    if (!(is >> key >> val) || key != "target") throw std::runtime_error("witness: expected 'target'");
    w.target = parse_rational(val);
    while (is >> val) w.y.push_back(parse_rational(val));
    return w;
}

// Hash of the canonical form; stable name for a graph up to symmetry.
inline uint64_t graph_hash(const PointList& pts) {
    PointList c = canonize(pts);
    uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&](std::int64_t v) {
        for (int k = 0; k < 8; ++k) h = (h ^ uint8_t(v >> (8 * k))) * 0x100000001b3ull;
    };
    for (const Point& p : c) {
        mix(p.a);
        mix(p.b);
        mix(p.c);
        mix(p.d);
    }
    return h;
}

}  // namespace moser
