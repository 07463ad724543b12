#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "point.hpp"
#include "rational.hpp"
#include "weights.hpp"

namespace moser {

// Graph file: one "a b c d" quadruple per line; '#' starts a comment;
// blank lines ignored. Line order is preserved in the returned vector.
inline std::vector<Point> read_points(std::istream& is) {
    std::vector<Point> pts;
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        Point p;
        if (!(ls >> p.a)) continue;  // blank or comment-only
        if (!(ls >> p.b >> p.c >> p.d)) {
            throw std::runtime_error("graph file line " + std::to_string(lineno) +
                                     ": expected four integers");
        }
        std::int64_t extra;
        if (ls >> extra)
            throw std::runtime_error("graph file line " + std::to_string(lineno) +
                                     ": more than four integers");
        pts.push_back(p);
    }
    return pts;
}

inline void write_points(std::ostream& os, const std::vector<Point>& pts,
                         const std::string& comment = {}) {
    if (!comment.empty()) os << "# " << comment << "\n";
    for (const Point& p : pts) os << p.a << " " << p.b << " " << p.c << " " << p.d << "\n";
}

// Colour file: one integer per line, paired with the graph file's line
// order. Comments and blanks as in graph files.
inline std::vector<uint32_t> read_colours(std::istream& is) {
    std::vector<uint32_t> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long c;
        if (!(ls >> c)) continue;
        if (c < 0)
            throw std::runtime_error("colour file line " + std::to_string(lineno) +
                                     ": negative colour");
        out.push_back(uint32_t(c));
    }
    return out;
}

// Weight file: one entry per line, "<rational> <i1>,<i2>,..." over vertex
// indices of the (sorted) graph; an empty index list is written as "-".
inline WeightFunction read_weights(std::istream& is) {
    WeightFunction w;
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string val, idx;
        if (!(ls >> val)) continue;
        if (!(ls >> idx))
            throw std::runtime_error("weight file line " + std::to_string(lineno) +
                                     ": missing index list");
        VertexSet s;
        if (idx != "-") {
            size_t pos = 0;
            while (pos < idx.size()) {
                size_t next = idx.find(',', pos);
                if (next == std::string::npos) next = idx.size();
                s.set(uint32_t(std::stoul(idx.substr(pos, next - pos))));
                pos = next + 1;
            }
        }
        w.add(s, parse_rational(val));
    }
    return w;
}

inline void write_weights(std::ostream& os, const WeightFunction& w) {
    for (const auto& [s, v] : w.entries()) {
        os << v.get_str() << " ";
        std::string idx;
        s.for_each([&](uint32_t i) {
            if (!idx.empty()) idx += ',';
            idx += std::to_string(i);
        });
        os << (idx.empty() ? "-" : idx) << "\n";
    }
}

}  // namespace moser
