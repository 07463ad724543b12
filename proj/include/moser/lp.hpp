#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lp_model.hpp"
#include "lp_text.hpp"
#include "simplex.hpp"

namespace moser {

enum class SolveMode { exact, numeric, external };

struct SolveOptions {
    SolveMode mode = SolveMode::numeric;
    uint64_t exact_column_cap = 50'000;
    double feas_tol = 1e-9;  // numeric feasibility
    double opt_tol = 1e-9;   // numeric reduced-cost threshold
    std::string external_cmd;  // command template with {lp} and {sol}
    std::string keep_dir;      // external work dir; empty means a fresh temp dir
};

// Worst violation of the model by a floating point vector: row residuals
// plus sign violations of nonnegative variables.
inline double primal_residual(const LPModel& m, const std::vector<double>& x) {
    double worst = 0.0;
    for (const auto& row : m.rows) {
        double v = -row.rhs.get_d();
        for (const auto& t : row.terms) v += double(t.coeff) * x[t.var];
        double viol = row.rel == Relation::le ? std::max(0.0, v)
                    : row.rel == Relation::ge ? std::max(0.0, -v)
                                              : std::fabs(v);
        worst = std::max(worst, viol);
    }
    for (uint32_t v = 0; v < m.n_vars; ++v)
        if (!m.free_var[v]) worst = std::max(worst, -x[v]);
    return worst;
}

inline Solution solve_exact(const LPModel& m, uint64_t column_cap = 50'000) {
    if (m.n_vars > column_cap)
        throw std::runtime_error("exact solver column cap exceeded: " + std::to_string(m.n_vars) +
                                 " columns, cap " + std::to_string(column_cap));
    typename Simplex<Rational>::Options opt;
    opt.bland = true;
    auto r = Simplex<Rational>::solve(m, opt);
    Solution s;
    s.status = r.status;
    s.exact = true;
    s.message = r.message;
    if (r.status == SolveStatus::optimal) {
        s.objective = r.objective;
        s.primal = std::move(r.x);
        s.dual = std::move(r.y);
    }
    return s;
}

inline Solution solve_numeric(const LPModel& m, const SolveOptions& o = {}) {
    typename Simplex<double>::Options opt;
    opt.opt_tol = o.opt_tol;
    opt.pivot_tol = 1e-9;
    opt.feas_tol = o.feas_tol;
    opt.bland = false;
    opt.max_iter = 200'000;
    auto r = Simplex<double>::solve(m, opt);
    Solution s;
    s.status = r.status;
    s.exact = false;
    s.message = r.message;
    if (r.status == SolveStatus::optimal) {
        s.objective = rational_from_double(r.objective);
        s.primal.reserve(r.x.size());
        for (double v : r.x) s.primal.push_back(rational_from_double(v));
        s.dual.reserve(r.y.size());
        for (double v : r.y) s.dual.push_back(rational_from_double(v));
        s.max_residual = primal_residual(m, r.x);
        if (s.max_residual > o.feas_tol) {
            s.status = SolveStatus::numeric_failure;
            s.message = "residual " + std::to_string(s.max_residual) + " above tolerance";
        }
    }
    return s;
}

// Runs the external backend: writes the LP, substitutes {lp} and {sol}
// into the command template, executes it, reads the solution back and
// checks residuals against the model.
inline Solution solve_external(const LPModel& m, const SolveOptions& o) {
    if (o.external_cmd.empty())
        throw std::runtime_error("external backend unavailable: no solver command configured");
    namespace fs = std::filesystem;
    fs::path dir;
    bool cleanup = o.keep_dir.empty();
    if (cleanup) {
        std::string tmpl = (fs::temp_directory_path() / "moser_lp_XXXXXX").string();
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        if (!mkdtemp(buf.data())) throw std::runtime_error("cannot create temp dir");
        dir = buf.data();
    } else {
        dir = o.keep_dir;
        fs::create_directories(dir);
    }
    fs::path lp_path = dir / "model.lp";
    fs::path sol_path = dir / "model.sol";
    {
        std::ofstream out(lp_path);
        write_lp(out, m);
        if (!out) throw std::runtime_error("cannot write " + lp_path.string());
    }
    std::string cmd = o.external_cmd;
    auto subst = [&](const std::string& key, const std::string& value) {
        for (size_t pos; (pos = cmd.find(key)) != std::string::npos;)
            cmd.replace(pos, key.size(), value);
    };
    subst("{lp}", lp_path.string());
    subst("{sol}", sol_path.string());
    int rc = std::system(cmd.c_str());
    Solution s;
    s.exact = false;
    if (rc != 0) {
        s.status = SolveStatus::numeric_failure;
        s.message = "external solver exited with code " + std::to_string(rc) + " (dir " +
                    dir.string() + ")";
        return s;
    }
    std::ifstream in(sol_path);
    if (!in) {
        s.status = SolveStatus::numeric_failure;
        s.message = "external solver produced no solution file";
        return s;
    }
    ImportedSolution imp = read_solution(in, m.n_vars);
    s.status = imp.status;
    if (imp.status == SolveStatus::optimal) {
        std::vector<double> x = imp.x;
        double obj = 0.0;
        for (uint32_t v = 0; v < m.n_vars; ++v) obj += m.objective[v].get_d() * x[v];
        if (imp.has_objective && std::fabs(imp.objective - obj) > 1e-6 * (1 + std::fabs(obj))) {
            s.message = "reported objective disagrees with recomputation";
        }
        s.objective = rational_from_double(obj);
        s.primal.reserve(x.size());
        for (double v : x) s.primal.push_back(rational_from_double(v));
        s.max_residual = primal_residual(m, x);
        if (s.max_residual > std::max(o.feas_tol, 1e-6)) {
            s.status = SolveStatus::numeric_failure;
            s.message = "external solution residual " + std::to_string(s.max_residual);
        }
    }
    if (cleanup && s.status == SolveStatus::optimal) {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    return s;
}

inline Solution solve(const LPModel& m, const SolveOptions& o) {
    switch (o.mode) {
        case SolveMode::exact: return solve_exact(m, o.exact_column_cap);
        case SolveMode::numeric: return solve_numeric(m, o);
        default: return solve_external(m, o);
    }
}

// Convenience bundle for one graph's geometric colouring LP.
struct ChiGfProblem {
    ConstraintSystem cs;
    SparseConstraints sp;
    LPModel model;
};

inline ChiGfProblem make_chi_gf_problem(const UnitGraph& g) {
    ChiGfProblem p;
    p.cs = build_constraints(g);
    p.sp = sparse_constraints(p.cs);
    p.model = chi_gf_model(p.cs, p.sp);
    return p;
}

inline Solution chi_f(const UnitGraph& g, const SolveOptions& o) {
    return solve(chi_f_model(g, independent_sets(g)), o);
}

inline Solution chi_gf(const UnitGraph& g, const SolveOptions& o) {
    return solve(make_chi_gf_problem(g).model, o);
}

}  // namespace moser
