#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "helpers.hpp"
#include "moser/moser.hpp"

using namespace moser;

namespace {

LPModel make_model(uint32_t n_vars, std::vector<Rational> objective,
                   std::vector<LPModel::Row> rows, std::vector<uint8_t> free_var = {}) {
    LPModel m;
    m.n_vars = n_vars;
    m.objective = std::move(objective);
    m.rows = std::move(rows);
    m.free_var = free_var.empty() ? std::vector<uint8_t>(n_vars, 0) : std::move(free_var);
    return m;
}

Rational dot_rhs(const LPModel& m, const std::vector<Rational>& y) {
    Rational acc(0);
    for (size_t r = 0; r < m.rows.size(); ++r) acc += m.rows[r].rhs * y[r];
    return acc;
}

}  // namespace

TEST_CASE("bounded box LP solves to its corner") {
    // min -x0 - 2 x1  s.t.  x0 <= 3, x1 <= 5, x0 + x1 <= 6.
    auto m = make_model(2, {Rational(-1), Rational(-2)},
                        {{{{0, 1}}, Relation::le, Rational(3)},
                         {{{1, 1}}, Relation::le, Rational(5)},
                         {{{0, 1}, {1, 1}}, Relation::le, Rational(6)}});
    auto s = solve_exact(m);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.objective == Rational(-11));
    CHECK(s.primal[0] == Rational(1));
    CHECK(s.primal[1] == Rational(5));
}

TEST_CASE("contradictory bounds are reported infeasible") {
    auto m = make_model(1, {Rational(1)},
                        {{{{0, 1}}, Relation::ge, Rational(2)},
                         {{{0, 1}}, Relation::le, Rational(1)}});
    CHECK(solve_exact(m).status == SolveStatus::infeasible);

    // Negative right-hand side with a nonnegative variable.
    auto m2 = make_model(1, {Rational(1)}, {{{{0, 1}}, Relation::le, Rational(-1)}});
    CHECK(solve_exact(m2).status == SolveStatus::infeasible);
}

TEST_CASE("unbounded directions are detected") {
    auto m = make_model(1, {Rational(-1)}, {{{{0, 1}}, Relation::ge, Rational(1)}});
    CHECK(solve_exact(m).status == SolveStatus::unbounded);
}

TEST_CASE("free variables can go negative and satisfy equalities") {
    // min x1  s.t.  x0 + x1 = 3, x0 <= 1, x1 free: push x0 to its bound.
    auto m = make_model(2, {Rational(0), Rational(1)},
                        {{{{0, 1}, {1, 1}}, Relation::eq, Rational(3)},
                         {{{0, 1}}, Relation::le, Rational(1)}},
                        {0, 1});
    auto s = solve_exact(m);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.objective == Rational(2));
    CHECK(s.primal[0] == Rational(1));
    CHECK(s.primal[1] == Rational(2));

    auto m2 = make_model(1, {Rational(1)}, {{{{0, 1}}, Relation::ge, Rational(-5)}}, {1});
    auto s2 = solve_exact(m2);
    REQUIRE(s2.status == SolveStatus::optimal);
    CHECK(s2.objective == Rational(-5));
}

TEST_CASE("rational data stays exact through pivots") {
    // min x0/3 + x1/7  s.t.  x0 + x1 >= 1/2, x0 - x1 = 1/6.
    auto m = make_model(2, {make_rational(1, 3), make_rational(1, 7)},
                        {{{{0, 1}, {1, 1}}, Relation::ge, make_rational(1, 2)},
                         {{{0, 1}, {1, -1}}, Relation::eq, make_rational(1, 6)}});
    auto s = solve_exact(m);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.primal[0] == make_rational(1, 3));
    CHECK(s.primal[1] == make_rational(1, 6));
    CHECK(s.objective == make_rational(1, 9) + make_rational(1, 42));
    CHECK(dot_rhs(m, s.dual) == s.objective);
}

TEST_CASE("degenerate optimum at the origin") {
    auto m = make_model(1, {Rational(1)},
                        {{{{0, 1}}, Relation::ge, Rational(0)},
                         {{{0, 1}}, Relation::le, Rational(0)}});
    auto s = solve_exact(m);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.objective == Rational(0));
}

TEST_CASE("covering duals certify the fractional chromatic number") {
    auto g = test::load_graph("m7.txt");
    auto sets = independent_sets(g);
    auto m = chi_f_model(g, sets);
    auto s = solve_exact(m);
    REQUIRE(s.status == SolveStatus::optimal);
    REQUIRE(s.objective == make_rational(7, 2));

    // Strong duality plus dual feasibility for min 1.x, Ax >= 1, x >= 0:
    // y >= 0, column sums at most the cost, total equal to the optimum.
    Rational total(0);
    for (const auto& yv : s.dual) {
        CHECK(sgn(yv) >= 0);
        total += yv;
    }
    CHECK(total == make_rational(7, 2));
    for (const auto& set : sets) {
        Rational col(0);
        set.for_each([&](uint32_t v) { col += s.dual[v]; });
        CHECK(col <= Rational(1));
    }
}

TEST_CASE("numeric and exact runs agree on random bounded models") {
    std::mt19937_64 rng(20240816);
    for (int trial = 0; trial < 60; ++trial) {
        uint32_t nv = 1 + uint32_t(rng() % 5);
        LPModel m;
        m.n_vars = nv;
        m.free_var.assign(nv, 0);
        for (uint32_t v = 0; v < nv; ++v) m.objective.push_back(test::random_rational(rng));
        // Box rows keep the model bounded; the origin keeps it feasible.
        for (uint32_t v = 0; v < nv; ++v)
            m.rows.push_back({{{v, 1}}, Relation::le, make_rational(1 + long(rng() % 9), 1)});
        uint32_t extra = uint32_t(rng() % 4);
        for (uint32_t r = 0; r < extra; ++r) {
            LPModel::Row row;
            for (uint32_t v = 0; v < nv; ++v) {
                int32_t c = int32_t(rng() % 7) - 3;
                if (c != 0) row.terms.push_back({v, c});
            }
            if (row.terms.empty()) continue;
            row.rel = Relation::le;
            row.rhs = make_rational(long(rng() % 12), 1);
            m.rows.push_back(std::move(row));
        }

        auto ex = solve_exact(m);
        REQUIRE(ex.status == SolveStatus::optimal);
        CHECK(dot_rhs(m, ex.dual) == ex.objective);

        auto nu = solve_numeric(m);
        REQUIRE(nu.status == SolveStatus::optimal);
        CHECK(std::fabs(nu.objective.get_d() - ex.objective.get_d()) < 1e-7);
        CHECK(nu.max_residual <= 1e-9);
    }
}

TEST_CASE("inconsistent model arrays are rejected") {
    LPModel m;
    m.n_vars = 2;
    m.objective.assign(1, Rational(1));
    m.free_var.assign(2, 0);
    CHECK_THROWS_AS(solve_exact(m), std::logic_error);
}

TEST_CASE("exact column cap refuses oversized models") {
    auto m = make_model(3, {Rational(1), Rational(1), Rational(1)},
                        {{{{0, 1}, {1, 1}, {2, 1}}, Relation::ge, Rational(1)}});
    CHECK_THROWS_AS(solve_exact(m, 2), std::runtime_error);
    CHECK(solve_exact(m, 3).status == SolveStatus::optimal);
}
