#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "weights.hpp"

namespace moser {

struct CubeColouring {
    WeightFunction gamma;        // regular member of gfc(g) by construction
    Rational weight;             // |translations| / |basis|
    std::vector<Point> basis;    // maximum independent set of the cube graph
    uint32_t cube_vertices = 0;  // (2N+1)^4
};

// Periodic colouring of g from a maximum independent set B of the coefficient
// cube [-N,N]^4: every translate B+t that meets g contributes one atom
// g intersect (B+t) with weight 1/|B|. The result is regular because each
// vertex x lies in exactly |B| translates (t = x-b), and it is geometric
// because congruent sections of a fixed planar set appear with equal
// frequency. Total weight is |{t in g-B}| / |B|.
inline CubeColouring cube_colouring(const UnitGraph& g, int64_t n_cube = 1,
                                    uint64_t cap_points = 81) {
    if (g.n() == 0) throw std::invalid_argument("cube colouring of empty graph");
    if (n_cube < 0) throw std::invalid_argument("negative cube radius");
    uint64_t side = uint64_t(2 * n_cube + 1);
    uint64_t total = side * side * side * side;
    if (total > cap_points)
        throw std::runtime_error("cube too large for exact maximum independent set: (2N+1)^4 = " +
                                 std::to_string(total) + " exceeds cap " +
                                 std::to_string(cap_points));
    std::vector<Point> cube;
    cube.reserve(total);
    for (int64_t a = -n_cube; a <= n_cube; ++a)
        for (int64_t b = -n_cube; b <= n_cube; ++b)
            for (int64_t c = -n_cube; c <= n_cube; ++c)
                for (int64_t d = -n_cube; d <= n_cube; ++d) cube.push_back({a, b, c, d});
    UnitGraph cube_graph = UnitGraph::build(cube);
    VertexSet mis = maximum_independent_set(cube_graph);

    std::set<Point> basis;
    mis.for_each([&](uint32_t i) { basis.insert(cube_graph.point(i)); });

    std::set<Point> translations;
    for (const Point& x : g.points())
        for (const Point& b : basis) translations.insert(x - b);

    std::map<VertexSet, uint64_t> atom_count;
    for (const Point& t : translations) {
        VertexSet atom;
        for (uint32_t i = 0; i < g.n(); ++i)
            if (basis.count(g.point(i) - t)) atom.set(i);
        ++atom_count[atom];
    }

    CubeColouring out;
    out.cube_vertices = uint32_t(total);
    out.basis.assign(basis.begin(), basis.end());
    Integer bsz(uint64_t(basis.size()));
    for (const auto& [atom, cnt] : atom_count) out.gamma.add(atom, detail::frac(cnt, bsz));
    out.gamma.set_regular(true);
    out.weight = detail::frac(uint64_t(translations.size()), bsz);
    return out;
}

}  // namespace moser
