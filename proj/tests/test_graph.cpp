#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "helpers.hpp"
#include "moser/moser.hpp"

using namespace moser;

TEST_CASE("the spindle has the expected structure") {
    UnitGraph g = test::load_graph("m7.txt");
    CHECK(g.n() == 7);
    CHECK(g.edge_count() == 11);
    CHECK(independence_number(g) == 2);
    CHECK(independent_sets(g).size() == 17);
    CHECK(hall_ratio(g) == make_rational(7, 2));
}

TEST_CASE("duplicate points are rejected") {
    PointList pts{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}};
    CHECK_THROWS(UnitGraph::build(pts));
}

TEST_CASE("adjacency agrees with pairwise exact distances") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        PointList pts = test::random_graph(rng, 4 + rng() % 7);
        UnitGraph g = UnitGraph::build(pts);
        size_t edges = 0;
        for (uint32_t i = 0; i < g.n(); ++i)
            for (uint32_t j = i + 1; j < g.n(); ++j) {
                bool unit = is_unit_distance(g.point(i), g.point(j));
                CHECK(g.adjacent(i, j) == unit);
                edges += unit;
            }
        CHECK(g.edge_count() == edges);
    }
}

TEST_CASE("independent set enumeration is complete and sound") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        PointList pts = test::random_graph(rng, 4 + rng() % 6);
        UnitGraph g = UnitGraph::build(pts);
        auto sets = independent_sets(g);
        std::set<VertexSet> listed(sets.begin(), sets.end());
        CHECK(listed.size() == sets.size());
        // Exhaustive cross-check over all nonempty subsets.
        size_t independent_count = 0;
        for (uint64_t mask = 1; mask < (uint64_t(1) << g.n()); ++mask) {
            VertexSet s;
            for (uint32_t v = 0; v < g.n(); ++v)
                if (mask >> v & 1) s.set(v);
            CHECK(listed.count(s) == size_t(g.is_independent(s)));
            independent_count += g.is_independent(s);
        }
        CHECK(sets.size() == independent_count);
        for (size_t k = 1; k < sets.size(); ++k) CHECK(size_lex_less(sets[k - 1], sets[k]));
    }
}

TEST_CASE("maximum independent set is independent and maximum") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        PointList pts = test::random_graph(rng, 4 + rng() % 8);
        UnitGraph g = UnitGraph::build(pts);
        VertexSet best = maximum_independent_set(g);
        CHECK(g.is_independent(best));
        uint32_t alpha = 0;
        for (const VertexSet& s : independent_sets(g)) alpha = std::max(alpha, s.count());
        CHECK(best.count() == alpha);
        CHECK(independence_number(g) == alpha);
    }
}

TEST_CASE("induced subgraphs preserve adjacency through the index map") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        PointList pts = test::random_graph(rng, 5 + rng() % 6);
        UnitGraph g = UnitGraph::build(pts);
        VertexSet keep;
        for (uint32_t v = 0; v < g.n(); ++v)
            if (rng() % 2) keep.set(v);
        if (keep.count() < 2) keep.set(0), keep.set(1);
        UnitGraph h = g.induced(keep);
        std::vector<uint32_t> order = keep.indices();
        CHECK(h.n() == order.size());
        for (uint32_t i = 0; i < h.n(); ++i)
            for (uint32_t j = i + 1; j < h.n(); ++j)
                CHECK(h.adjacent(i, j) == g.adjacent(order[i], order[j]));
    }
}

TEST_CASE("hall ratio dominates the density of every induced subgraph") {
    PointList tri{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}};
    UnitGraph k3 = UnitGraph::build(tri);
    CHECK(k3.edge_count() == 3);
    CHECK(hall_ratio(k3) == make_rational(3));

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        PointList pts = test::random_graph(rng, 4 + rng() % 5);
        UnitGraph g = UnitGraph::build(pts);
        Rational rho = hall_ratio(g);
        CHECK(rho >= Rational(long(g.n())) / long(independence_number(g)));
        // Every induced subgraph obeys |H| <= rho * alpha(H).
        for (uint64_t mask = 1; mask < (uint64_t(1) << g.n()); ++mask) {
            VertexSet s;
            for (uint32_t v = 0; v < g.n(); ++v)
                if (mask >> v & 1) s.set(v);
            UnitGraph h = g.induced(s);
            CHECK(Rational(long(h.n())) <= rho * long(independence_number(h)));
        }
    }
}

TEST_CASE("vertex sets normalize and order correctly") {
    VertexSet a = VertexSet::single(3);
    VertexSet b;
    b.set(3);
    b.set(70);
    b.reset(70);
    CHECK(a == b);
    CHECK(a.hash() == b.hash());
    VertexSet c = VertexSet::single(2);
    CHECK(size_lex_less(c, a));  // same size, lower lowest member
    VertexSet d;
    d.set(0);
    d.set(1);
    CHECK(size_lex_less(a, d));  // smaller size first
    CHECK(a.subset_of(a));
    CHECK(!d.subset_of(a));
    CHECK((a & d).empty());
    CHECK((a | d).count() == 3);
}
