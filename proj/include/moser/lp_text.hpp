#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lp_model.hpp"
#include "rational.hpp"

namespace moser {

// Plain-text LP. Coefficients and right-hand sides are exact rational
// tokens, so export followed by import is lossless. Layout:
//   minimize
//   <c>*x<j> <c>*x<j> ...
//   st
//   r<i>: <c>*x<j> ... <= | = | >= <rhs>
//   bounds
//   x<j> free          (nonnegative variables have no line)
//   end
inline void write_lp(std::ostream& os, const LPModel& m) {
    m.check();
    os << "minimize\n";
    bool any = false;
    for (uint32_t v = 0; v < m.n_vars; ++v) {
        if (sgn(m.objective[v]) == 0) continue;
        os << (any ? " " : "") << m.objective[v].get_str() << "*x" << v;
        any = true;
    }
    if (!any) os << "0";
    os << "\nst\n";
    for (size_t i = 0; i < m.rows.size(); ++i) {
        const auto& row = m.rows[i];
        os << "r" << i << ":";
        if (row.terms.empty()) os << " 0";
        for (const auto& t : row.terms) os << " " << t.coeff << "*x" << t.var;
        os << (row.rel == Relation::le ? " <= " : row.rel == Relation::ge ? " >= " : " = ");
        os << row.rhs.get_str() << "\n";
    }
    os << "bounds\n";
    for (uint32_t v = 0; v < m.n_vars; ++v)
        if (m.free_var[v]) os << "x" << v << " free\n";
    os << "end\n";
}

namespace detail {

inline uint32_t parse_var(const std::string& tok) {
    if (tok.size() < 2 || tok[0] != 'x') throw std::runtime_error("lp: bad variable '" + tok + "'");
    return uint32_t(std::stoul(tok.substr(1)));
}

// "<rat>*x<j>"
inline LPModel::Term parse_term(const std::string& tok, uint32_t& max_var) {
    size_t star = tok.find('*');
    if (star == std::string::npos) throw std::runtime_error("lp: bad term '" + tok + "'");
    Rational c = parse_rational(tok.substr(0, star));
    if (c.get_den() != 1) throw std::runtime_error("lp: non-integer coefficient '" + tok + "'");
    long coeff = c.get_num().get_si();
    uint32_t var = parse_var(tok.substr(star + 1));
    max_var = std::max(max_var, var + 1);
    return {var, int32_t(coeff)};
}

}  // namespace detail

inline LPModel read_lp(std::istream& is) {
    LPModel m;
    std::string line;
    if (!std::getline(is, line) || line != "minimize") throw std::runtime_error("lp: expected 'minimize'");
    if (!std::getline(is, line)) throw std::runtime_error("lp: missing objective");
    uint32_t max_var = 0;
    std::vector<std::pair<uint32_t, Rational>> obj_terms;
    {
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (tok == "0") continue;
            size_t star = tok.find('*');
            if (star == std::string::npos) throw std::runtime_error("lp: bad objective term");
            Rational c = parse_rational(tok.substr(0, star));
            uint32_t var = detail::parse_var(tok.substr(star + 1));
            max_var = std::max(max_var, var + 1);
            obj_terms.emplace_back(var, c);
        }
    }
    if (!std::getline(is, line) || line != "st") throw std::runtime_error("lp: expected 'st'");
    while (std::getline(is, line)) {
        if (line == "bounds") break;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok.back() != ':') throw std::runtime_error("lp: bad row label");
        LPModel::Row row;
        bool have_rel = false;
        while (ls >> tok) {
            if (tok == "<=" || tok == "=" || tok == ">=") {
                row.rel = tok == "<=" ? Relation::le : tok == ">=" ? Relation::ge : Relation::eq;
                std::string rhs;
                if (!(ls >> rhs)) throw std::runtime_error("lp: missing rhs");
                row.rhs = parse_rational(rhs);
                have_rel = true;
                break;
            }
            if (tok == "0") continue;
            row.terms.push_back(detail::parse_term(tok, max_var));
        }
        if (!have_rel) throw std::runtime_error("lp: row without relation");
        m.rows.push_back(std::move(row));
    }
    m.n_vars = max_var;
    m.objective.assign(m.n_vars, Rational(0));
    for (auto& [v, c] : obj_terms) m.objective[v] = c;
    m.free_var.assign(m.n_vars, 0);
    while (std::getline(is, line)) {
        if (line == "end") break;
        std::istringstream ls(line);
        std::string var, kw;
        if (ls >> var >> kw) {
            if (kw != "free") throw std::runtime_error("lp: bad bounds line");
            m.free_var[detail::parse_var(var)] = 1;
        }
    }
    return m;
}

// Order-sensitive structural hash; equal for export/import round trips.
inline uint64_t model_hash(const LPModel& m) {
    uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&](const std::string& s) {
        for (char c : s) h = (h ^ uint8_t(c)) * 0x100000001b3ull;
        h = (h ^ 0xff) * 0x100000001b3ull;
    };
    mix(std::to_string(m.n_vars));
    for (uint32_t v = 0; v < m.n_vars; ++v) {
        if (sgn(m.objective[v]) != 0) mix(std::to_string(v) + "=" + m.objective[v].get_str());
        if (m.free_var[v]) mix(std::to_string(v) + "f");
    }
    for (const auto& row : m.rows) {
        mix(row.rel == Relation::le ? "<=" : row.rel == Relation::ge ? ">=" : "=");
        mix(row.rhs.get_str());
        for (const auto& t : row.terms) mix(std::to_string(t.var) + ":" + std::to_string(t.coeff));
    }
    return h;
}

// Solution file: optional "status <s>" and "objective <v>" lines, then
// "x<j> <value>" lines; absent variables are zero.
struct ImportedSolution {
    SolveStatus status = SolveStatus::optimal;
    double objective = 0.0;
    bool has_objective = false;
    std::vector<double> x;
};

// Single-pass audit of a solution vector against an LP text stream, for
// models too large to keep parsed in memory: recomputes the objective and
// the worst row/bound violation. x is indexed by variable.
struct StreamCheck {
    double objective = 0.0;
    double max_residual = 0.0;
    uint64_t rows = 0;
};

inline StreamCheck stream_check_lp(std::istream& is, const std::vector<double>& x) {
    auto value_of = [&](uint32_t v) { return v < x.size() ? x[v] : 0.0; };
    StreamCheck out;
    std::string line;
    if (!std::getline(is, line) || line != "minimize")
        throw std::runtime_error("lp: expected 'minimize'");
    if (!std::getline(is, line)) throw std::runtime_error("lp: missing objective");
    {
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (tok == "0") continue;
            size_t star = tok.find('*');
            if (star == std::string::npos) throw std::runtime_error("lp: bad objective term");
            out.objective += parse_rational(tok.substr(0, star)).get_d() *
                             value_of(detail::parse_var(tok.substr(star + 1)));
        }
    }
    if (!std::getline(is, line) || line != "st") throw std::runtime_error("lp: expected 'st'");
    std::string tok;
    while (std::getline(is, line)) {
        if (line == "bounds") break;
        std::istringstream ls(line);
        if (!(ls >> tok) || tok.back() != ':') throw std::runtime_error("lp: bad row label");
        double lhs = 0.0;
        Relation rel = Relation::eq;
        bool have_rel = false;
        while (ls >> tok) {
            if (tok == "<=" || tok == "=" || tok == ">=") {
                rel = tok == "<=" ? Relation::le : tok == ">=" ? Relation::ge : Relation::eq;
                std::string rhs;
                if (!(ls >> rhs)) throw std::runtime_error("lp: missing rhs");
                lhs -= parse_rational(rhs).get_d();
                have_rel = true;
                break;
            }
            if (tok == "0") continue;
            size_t star = tok.find('*');
            if (star == std::string::npos) throw std::runtime_error("lp: bad term");
            lhs += parse_rational(tok.substr(0, star)).get_d() *
                   value_of(detail::parse_var(tok.substr(star + 1)));
        }
        if (!have_rel) throw std::runtime_error("lp: row without relation");
        double viol = rel == Relation::le ? std::max(0.0, lhs)
                    : rel == Relation::ge ? std::max(0.0, -lhs)
                                          : std::fabs(lhs);
        out.max_residual = std::max(out.max_residual, viol);
        ++out.rows;
    }
    std::vector<uint8_t> free_var;
    while (std::getline(is, line)) {
        if (line == "end") break;
        std::istringstream ls(line);
        std::string var, kw;
        if (ls >> var >> kw) {
            if (kw != "free") throw std::runtime_error("lp: bad bounds line");
            uint32_t v = detail::parse_var(var);
            if (v >= free_var.size()) free_var.resize(v + 1, 0);
            free_var[v] = 1;
        }
    }
    for (uint32_t v = 0; v < x.size(); ++v)
        if ((v >= free_var.size() || !free_var[v]) && x[v] < 0)
            out.max_residual = std::max(out.max_residual, -x[v]);
    return out;
}

inline ImportedSolution read_solution(std::istream& is, uint32_t n_vars) {
    ImportedSolution out;
    out.x.assign(n_vars, 0.0);
    std::string key;
    while (is >> key) {
        if (key == "status") {
            std::string s;
            is >> s;
            if (s == "optimal")
                out.status = SolveStatus::optimal;
            else if (s == "infeasible")
                out.status = SolveStatus::infeasible;
            else if (s == "unbounded")
                out.status = SolveStatus::unbounded;
            else
                out.status = SolveStatus::numeric_failure;
        } else if (key == "objective") {
            is >> out.objective;
            out.has_objective = true;
        } else if (!key.empty() && key[0] == 'x') {
            uint32_t v = detail::parse_var(key);
            double val;
            if (!(is >> val)) throw std::runtime_error("solution: missing value for " + key);
            if (v < n_vars) out.x[v] = val;
        } else {
            throw std::runtime_error("solution: unexpected token '" + key + "'");
        }
    }
    return out;
}

}  // namespace moser
