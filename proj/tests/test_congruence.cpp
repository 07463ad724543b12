#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "helpers.hpp"
#include "moser/moser.hpp"

using namespace moser;

namespace {

PointList subset_points(const UnitGraph& g, const VertexSet& s) {
    PointList out;
    s.for_each([&](uint32_t v) { out.push_back(g.point(v)); });
    return out;
}

std::vector<PointList> random_point_sets(std::mt19937_64& rng, size_t how_many) {
    std::vector<PointList> out;
    while (out.size() < how_many) {
        PointList pts = test::random_graph(rng, 2 + rng() % 5);
        out.push_back(pts);
    }
    return out;
}

}  // namespace

TEST_CASE("congruence is reflexive and symmetric") {
    std::mt19937_64 rng(101);
    auto sets = random_point_sets(rng, 40);
    for (const PointList& a : sets) CHECK(are_congruent(a, a));
    for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = i + 1; j < sets.size(); ++j)
            CHECK(are_congruent(sets[i], sets[j]) == are_congruent(sets[j], sets[i]));
}

TEST_CASE("lattice isometries produce congruent images") {
    std::mt19937_64 rng(103);
    const auto& group = symmetry_group();
    for (int trial = 0; trial < 60; ++trial) {
        PointList a = test::random_graph(rng, 2 + rng() % 6);
        const LatticeTransform& t = group[rng() % group.size()];
        auto coef = [&] { return int64_t(rng() % 9) - 4; };
        Point shift{coef(), coef(), coef(), coef()};
        PointList b;
        for (const Point& p : a) b.push_back(t.apply(p) + shift);
        std::shuffle(b.begin(), b.end(), rng);
        CHECK(are_congruent(a, b));
        CHECK(congruence_key(a) == congruence_key(b));
    }
}

TEST_CASE("different distance multisets are never congruent") {
    PointList a{{0, 0, 0, 0}, {1, 0, 0, 0}};
    PointList b{{0, 0, 0, 0}, {2, 0, 0, 0}};
    CHECK(!are_congruent(a, b));
    CHECK(!(congruence_key(a) == congruence_key(b)));
    CHECK(!are_congruent(a, PointList{{0, 0, 0, 0}}));
}

TEST_CASE("classes partition the independent sets and respect congruence") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 12; ++trial) {
        PointList pts = test::random_graph(rng, 4 + rng() % 5);
        UnitGraph g = UnitGraph::build(pts);
        auto sets = independent_sets(g);
        auto classes = congruence_classes(g, sets);

        std::vector<int> owner(sets.size(), -1);
        size_t covered = 0;
        for (size_t c = 0; c < classes.size(); ++c) {
            REQUIRE(!classes[c].empty());
            for (size_t k = 0; k < classes[c].size(); ++k) {
                uint32_t idx = classes[c][k];
                REQUIRE(idx < sets.size());
                CHECK(owner[idx] == -1);
                owner[idx] = int(c);
                ++covered;
                if (k) CHECK(classes[c][k - 1] < classes[c][k]);
            }
        }
        CHECK(covered == sets.size());
        for (size_t c = 1; c < classes.size(); ++c)
            CHECK(classes[c - 1][0] < classes[c][0]);

        // Within a class: pairwise congruent (transitivity witnessed
        // exhaustively on these sizes). Between class representatives:
        // never congruent.
        for (const auto& cls : classes) {
            PointList rep = subset_points(g, sets[cls[0]]);
            for (size_t k = 1; k < cls.size(); ++k)
                CHECK(are_congruent(rep, subset_points(g, sets[cls[k]])));
        }
        for (size_t c1 = 0; c1 < classes.size(); ++c1)
            for (size_t c2 = c1 + 1; c2 < classes.size(); ++c2)
                CHECK(!are_congruent(subset_points(g, sets[classes[c1][0]]),
                                     subset_points(g, sets[classes[c2][0]])));
    }
}

TEST_CASE("spindle spanning pairs count matches the class structure") {
    UnitGraph g = test::load_graph("m7.txt");
    auto sets = independent_sets(g);
    auto classes = congruence_classes(g, sets);
    auto rows = spanning_pairs(classes);
    CHECK(sets.size() - classes.size() == rows.size());
    CHECK(rows.size() == 10);
    for (const auto& row : rows) {
        CHECK(row.y_col < row.yp_col);
        CHECK(are_congruent(subset_points(g, sets[row.y_col]),
                            subset_points(g, sets[row.yp_col])));
    }
}

TEST_CASE("all singletons share one class, pairs split by distance") {
    PointList pts{{0, 0, 0, 0}, {1, 0, 0, 0}, {3, 0, 0, 0}};
    UnitGraph g = UnitGraph::build(pts);  // one edge: 0-1
    auto sets = independent_sets(g);
    auto classes = congruence_classes(g, sets);
    // Sets: three singletons, pairs {0,2}, {1,2}. Distances |3| and |2|
    // differ, so the pairs are in distinct classes.
    REQUIRE(sets.size() == 5);
    CHECK(classes.size() == 3);
    size_t sizes[3];
    for (size_t c = 0; c < classes.size(); ++c) sizes[c] = classes[c].size();
    CHECK(sizes[0] == 3);
    CHECK(sizes[1] == 1);
    CHECK(sizes[2] == 1);
}
