#pragma once

#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "moser/moser.hpp"

namespace test {

inline std::string data_path(const std::string& name) {
    return std::string(MOSER_DATA_DIR) + "/" + name;
}

inline moser::PointList load_points(const std::string& name) {
    std::ifstream in(data_path(name));
    if (!in) throw std::runtime_error("missing data file: " + name);
    return moser::read_points(in);
}

inline moser::UnitGraph load_graph(const std::string& name) {
    return moser::UnitGraph::build(load_points(name));
}

// Connected random lattice graph grown by uniform extension moves.
inline moser::PointList random_graph(std::mt19937_64& rng, size_t n) {
    moser::PointList pts{moser::Point{0, 0, 0, 0}};
    while (pts.size() < n) {
        auto cands = moser::extension_candidates(pts);
        if (cands.empty()) break;
        auto it = cands.begin();
        std::advance(it, long(rng() % cands.size()));
        pts.push_back(*it);
        std::sort(pts.begin(), pts.end());
    }
    return pts;
}

inline moser::Rational random_rational(std::mt19937_64& rng, long num_range = 20,
                                       long den_range = 12) {
    long num = long(rng() % (2 * num_range + 1)) - num_range;
    long den = 1 + long(rng() % den_range);
    return moser::make_rational(num, den);
}

}  // namespace test
