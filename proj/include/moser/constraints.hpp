#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "congruence.hpp"
#include "graph.hpp"
#include "vertex_set.hpp"

namespace moser {

// Linear description of the geometric colouring cone for one graph.
// Columns are the nonempty independent sets in (size, lex) order. Each row
// is a spanning congruence pair (Y, Y'): class representative against
// another member. The row's sparse form over column j is
//   +1 if col_j contains Y and not Y', -1 if col_j contains Y' and not Y.
// Y and Y' are themselves independent sets, stored as column indices.
struct ConstraintSystem {
    struct Row {
        uint32_t y_col;   // class representative (least column index)
        uint32_t yp_col;  // other member
    };

    std::vector<VertexSet> columns;
    std::vector<Row> rows;
    std::vector<uint32_t> e_cols;  // ascending columns containing vertex 0

    size_t n_cols() const { return columns.size(); }
    size_t n_rows() const { return rows.size(); }

    // Entry C[r][j] in {-1, 0, +1}.
    int entry(uint32_t r, uint32_t j) const {
        const VertexSet& y = columns[rows[r].y_col];
        const VertexSet& yp = columns[rows[r].yp_col];
        bool sy = y.subset_of(columns[j]);
        bool syp = yp.subset_of(columns[j]);
        if (sy == syp) return 0;
        return sy ? 1 : -1;
    }
};

// Spanning pairs per class: (representative, member) for every non-
// representative member, emitted class by class in representative order.
inline std::vector<ConstraintSystem::Row> spanning_pairs(
    const std::vector<std::vector<uint32_t>>& classes) {
    std::vector<ConstraintSystem::Row> rows;
    for (const auto& cls : classes)
        for (size_t i = 1; i < cls.size(); ++i) rows.push_back({cls[0], cls[i]});
    return rows;
}

inline ConstraintSystem build_constraints(const UnitGraph& g) {
    ConstraintSystem cs;
    cs.columns = independent_sets(g);
    cs.rows = spanning_pairs(congruence_classes(g, cs.columns));
    for (uint32_t j = 0; j < cs.columns.size(); ++j)
        if (cs.columns[j].test(0)) cs.e_cols.push_back(j);
    return cs;
}

// Sparse row-major form of C, materialized once for solvers and checkers.
struct SparseConstraints {
    std::vector<uint32_t> plus;         // concatenated +1 column indices
    std::vector<uint32_t> minus;        // concatenated -1 column indices
    std::vector<uint64_t> plus_begin;   // n_rows+1 offsets
    std::vector<uint64_t> minus_begin;  // n_rows+1 offsets
};

// Builds the sparse matrix. For every row (Y, Y') the entries are the
// columns containing exactly one of the two sets. Columns are scanned once
// per row through word masks: for graphs of at most 64 vertices the subset
// tests are single-word operations.
inline SparseConstraints sparse_constraints(const ConstraintSystem& cs) {
    SparseConstraints sp;
    sp.plus_begin.assign(1, 0);
    sp.minus_begin.assign(1, 0);
    size_t n = cs.columns.size();
    bool small = true;
    for (const VertexSet& c : cs.columns) small = small && c.words().size() <= 1;
    if (small) {
        std::vector<uint64_t> col(n);
        for (size_t j = 0; j < n; ++j) col[j] = cs.columns[j].word0();
        for (const auto& row : cs.rows) {
            uint64_t y = col[row.y_col], yp = col[row.yp_col];
            for (uint32_t j = 0; j < n; ++j) {
                bool sy = (col[j] & y) == y;
                bool syp = (col[j] & yp) == yp;
                if (sy == syp) continue;
                (sy ? sp.plus : sp.minus).push_back(j);
            }
            sp.plus_begin.push_back(sp.plus.size());
            sp.minus_begin.push_back(sp.minus.size());
        }
    } else {
        for (const auto& row : cs.rows) {
            const VertexSet& y = cs.columns[row.y_col];
            const VertexSet& yp = cs.columns[row.yp_col];
            for (uint32_t j = 0; j < n; ++j) {
                bool sy = y.subset_of(cs.columns[j]);
                bool syp = yp.subset_of(cs.columns[j]);
                if (sy == syp) continue;
                (sy ? sp.plus : sp.minus).push_back(j);
            }
            sp.plus_begin.push_back(sp.plus.size());
            sp.minus_begin.push_back(sp.minus.size());
        }
    }
    return sp;
}

namespace detail {
inline std::string index_list(const VertexSet& s) {
    std::string out;
    s.for_each([&](uint32_t i) {
        if (!out.empty()) out += ',';
        out += std::to_string(i);
    });
    return out;
}

inline std::vector<uint32_t> parse_index_list(const std::string& s) {
    std::vector<uint32_t> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(uint32_t(std::stoul(s.substr(pos, next - pos))));
        pos = next + 1;
    }
    return out;
}
}  // namespace detail

// Text export. One line per row: the pair as vertex index lists, then the
// sparse entries in ascending column order. Deterministic byte for byte.
inline void write_constraints(std::ostream& os, const ConstraintSystem& cs,
                              const SparseConstraints& sp) {
    os << "cols " << cs.n_cols() << " rows " << cs.n_rows() << "\n";
    os << "e";
    for (uint32_t j : cs.e_cols) os << " " << j;
    os << "\n";
    for (size_t r = 0; r < cs.rows.size(); ++r) {
        os << "row " << r << " Y=" << detail::index_list(cs.columns[cs.rows[r].y_col])
           << " Y'=" << detail::index_list(cs.columns[cs.rows[r].yp_col]);
        uint64_t p = sp.plus_begin[r], pe = sp.plus_begin[r + 1];
        uint64_t m = sp.minus_begin[r], me = sp.minus_begin[r + 1];
        // Merge the two ascending runs so entries appear in column order.
        while (p < pe || m < me) {
            bool take_plus = m >= me || (p < pe && sp.plus[p] < sp.minus[m]);
            if (take_plus)
                os << " " << sp.plus[p++] << ":+1";
            else
                os << " " << sp.minus[m++] << ":-1";
        }
        os << "\n";
    }
}

// Re-read of the export: columns are not reconstructed (the file does not
// define the sets behind column indices), but the sparse matrix, e vector
// and row pair labels are, which is all a witness check needs.
struct ImportedConstraints {
    uint64_t n_cols = 0;
    std::vector<uint32_t> e_cols;
    std::vector<std::pair<std::vector<uint32_t>, std::vector<uint32_t>>> row_pairs;
    SparseConstraints sparse;
};

inline ImportedConstraints read_constraints(std::istream& is) {
    ImportedConstraints out;
    out.sparse.plus_begin.assign(1, 0);
    out.sparse.minus_begin.assign(1, 0);
    std::string word;
    uint64_t n_rows = 0;
    if (!(is >> word) || word != "cols") throw std::runtime_error("constraints: expected 'cols'");
    is >> out.n_cols;
    if (!(is >> word) || word != "rows") throw std::runtime_error("constraints: expected 'rows'");
    is >> n_rows;
    if (!(is >> word) || word != "e") throw std::runtime_error("constraints: expected 'e'");
    std::string line;
    std::getline(is, line);
    std::istringstream es(line);
    uint32_t j;
    while (es >> j) out.e_cols.push_back(j);
    for (uint64_t r = 0; r < n_rows; ++r) {
        uint64_t idx;
        if (!(is >> word) || word != "row") throw std::runtime_error("constraints: expected 'row'");
        is >> idx;
        if (idx != r) throw std::runtime_error("constraints: row index out of order");
        std::string ypart, yppart;
        is >> ypart >> yppart;
        if (ypart.rfind("Y=", 0) != 0 || yppart.rfind("Y'=", 0) != 0)
            throw std::runtime_error("constraints: malformed row header");
        out.row_pairs.emplace_back(detail::parse_index_list(ypart.substr(2)),
                                   detail::parse_index_list(yppart.substr(3)));
        std::getline(is, line);
        std::istringstream rs(line);
        std::string ent;
        while (rs >> ent) {
            size_t colon = ent.find(':');
            if (colon == std::string::npos) throw std::runtime_error("constraints: malformed entry");
            uint32_t col = uint32_t(std::stoul(ent.substr(0, colon)));
            std::string sign = ent.substr(colon + 1);
            if (sign == "+1")
                out.sparse.plus.push_back(col);
            else if (sign == "-1")
                out.sparse.minus.push_back(col);
            else
                throw std::runtime_error("constraints: entry sign must be +1 or -1");
        }
        out.sparse.plus_begin.push_back(out.sparse.plus.size());
        out.sparse.minus_begin.push_back(out.sparse.minus.size());
    }
    return out;
}

}  // namespace moser
