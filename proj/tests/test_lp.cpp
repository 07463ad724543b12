#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "helpers.hpp"
#include "moser/moser.hpp"

using namespace moser;

namespace {

UnitGraph triangle() {
    return UnitGraph::build({Point{0, 0, 0, 0}, Point{1, 0, 0, 0}, Point{0, 1, 0, 0}});
}

UnitGraph edge_pair() {
    return UnitGraph::build({Point{0, 0, 0, 0}, Point{1, 0, 0, 0}});
}

std::vector<double> to_doubles(const std::vector<Rational>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& r : xs) out.push_back(r.get_d());
    return out;
}

}  // namespace

TEST_CASE("triangle fractional chromatic number is 3") {
    SolveOptions o;
    o.mode = SolveMode::exact;
    auto s = chi_f(triangle(), o);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.objective == Rational(3));
    CHECK(s.exact);
}

TEST_CASE("unit edge has geometric value 2") {
    SolveOptions o;
    o.mode = SolveMode::exact;
    auto s = chi_gf(edge_pair(), o);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.objective == Rational(2));

    // Both singleton columns are congruent, so they carry equal weight.
    auto p = make_chi_gf_problem(edge_pair());
    auto sol = solve_exact(p.model);
    REQUIRE(sol.primal.size() == 2);
    CHECK(sol.primal[0] == sol.primal[1]);
    CHECK(sol.primal[0] == Rational(1));
}

TEST_CASE("triangle geometric value is 3") {
    SolveOptions o;
    o.mode = SolveMode::exact;
    auto s = chi_gf(triangle(), o);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.objective == Rational(3));
}

TEST_CASE("numeric mode reproduces the exact spindle value") {
    auto g = test::load_graph("m7.txt");
    SolveOptions o;
    o.mode = SolveMode::numeric;
    auto s = chi_gf(g, o);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(std::fabs(s.objective.get_d() - 3.5) < 1e-6);
    CHECK(s.max_residual <= o.feas_tol);
}

TEST_CASE("lp text round trip preserves structure and hash") {
    auto g = test::load_graph("m7.txt");
    auto p = make_chi_gf_problem(g);

    std::stringstream text;
    write_lp(text, p.model);
    LPModel back = read_lp(text);

    CHECK(back.n_vars == p.model.n_vars);
    CHECK(back.rows.size() == p.model.rows.size());
    CHECK(model_hash(back) == model_hash(p.model));

    auto a = solve_exact(p.model);
    auto b = solve_exact(back);
    REQUIRE(a.status == SolveStatus::optimal);
    REQUIRE(b.status == SolveStatus::optimal);
    CHECK(a.objective == b.objective);
    CHECK(a.objective == make_rational(7, 2));
}

TEST_CASE("free variables and rational right-hand sides survive the round trip") {
    auto g = test::load_graph("m7.txt");
    auto cs = build_constraints(g);
    auto sp = sparse_constraints(cs);
    auto m = max_margin_model(cs, sp, make_rational(7, 2));

    std::stringstream text;
    write_lp(text, m);
    LPModel back = read_lp(text);
    CHECK(model_hash(back) == model_hash(m));
    REQUIRE(back.free_var.size() == m.free_var.size());
    CHECK(back.free_var == m.free_var);

    auto a = solve_exact(m);
    auto b = solve_exact(back);
    REQUIRE(a.status == SolveStatus::optimal);
    CHECK(a.objective == b.objective);
}

TEST_CASE("model hash reacts to any structural edit") {
    auto m = chi_f_model(triangle(), independent_sets(triangle()));
    uint64_t h = model_hash(m);

    LPModel m2 = m;
    m2.rows[0].rhs = Rational(2);
    CHECK(model_hash(m2) != h);

    LPModel m3 = m;
    m3.rows[1].terms[0].coeff = 2;
    CHECK(model_hash(m3) != h);

    LPModel m4 = m;
    m4.free_var[0] = 1;
    CHECK(model_hash(m4) != h);
}

TEST_CASE("malformed lp text is rejected") {
    std::stringstream a("maximize\n1*x0\nst\nend\n");
    CHECK_THROWS_AS(read_lp(a), std::runtime_error);
    std::stringstream b("minimize\n1*x0\nst\nr0: 1*x0\nbounds\nend\n");
    CHECK_THROWS_AS(read_lp(b), std::runtime_error);
    std::stringstream c("minimize\nbogus\nst\nbounds\nend\n");
    CHECK_THROWS_AS(read_lp(c), std::runtime_error);
}

TEST_CASE("solution files parse with defaults and statuses") {
    std::stringstream good("status optimal\nobjective 2.5\nx1 0.5\n");
    auto imp = read_solution(good, 3);
    CHECK(imp.status == SolveStatus::optimal);
    CHECK(imp.has_objective);
    CHECK(imp.objective == 2.5);
    CHECK(imp.x == std::vector<double>{0.0, 0.5, 0.0});

    std::stringstream inf("status infeasible\n");
    CHECK(read_solution(inf, 1).status == SolveStatus::infeasible);

    std::stringstream junk("status optimal\nwhat 3\n");
    CHECK_THROWS_AS(read_solution(junk, 1), std::runtime_error);
}

TEST_CASE("external backend runs a command and audits its answer") {
    LPModel m;
    m.n_vars = 1;
    m.objective = {Rational(1)};
    m.free_var = {0};
    m.rows = {{{{0, 1}}, Relation::ge, Rational(1)}};

    SolveOptions o;
    o.mode = SolveMode::external;
    o.keep_dir = (std::filesystem::temp_directory_path() / "moser_lp_fake").string();
    o.external_cmd = "cat {lp} > /dev/null && printf 'status optimal\\nobjective 1\\nx0 1\\n' > {sol}";
    auto s = solve_external(m, o);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(std::fabs(s.objective.get_d() - 1.0) < 1e-12);
    CHECK(s.max_residual <= 1e-12);
    CHECK(std::filesystem::exists(std::filesystem::path(o.keep_dir) / "model.lp"));

    SECTION("nonzero exit is a failure") {
        o.external_cmd = "exit 3";
        auto bad = solve_external(m, o);
        CHECK(bad.status == SolveStatus::numeric_failure);
        CHECK(bad.message.find("exit") != std::string::npos);
    }
    SECTION("missing solution file is a failure") {
        o.external_cmd = "rm -f {sol}";
        auto bad = solve_external(m, o);
        CHECK(bad.status == SolveStatus::numeric_failure);
    }
    SECTION("infeasible answers pass through") {
        o.external_cmd = "printf 'status infeasible\\n' > {sol}";
        CHECK(solve_external(m, o).status == SolveStatus::infeasible);
    }
    SECTION("violating answers are caught by the residual audit") {
        o.external_cmd = "printf 'status optimal\\nx0 0\\n' > {sol}";
        auto bad = solve_external(m, o);
        CHECK(bad.status == SolveStatus::numeric_failure);
        CHECK(bad.message.find("residual") != std::string::npos);
    }
    std::error_code ec;
    std::filesystem::remove_all(o.keep_dir, ec);

    SECTION("no configured command throws") {
        SolveOptions bare;
        bare.mode = SolveMode::external;
        CHECK_THROWS_AS(solve(m, bare), std::runtime_error);
    }
}

TEST_CASE("stream audit matches the in-memory residual") {
    auto g = test::load_graph("m7.txt");
    auto p = make_chi_gf_problem(g);
    auto sol = solve_exact(p.model);
    REQUIRE(sol.status == SolveStatus::optimal);
    std::vector<double> x = to_doubles(sol.primal);

    std::stringstream text;
    write_lp(text, p.model);
    auto audit = stream_check_lp(text, x);
    CHECK(audit.rows == p.model.rows.size());
    CHECK(std::fabs(audit.objective - 3.5) < 1e-12);
    CHECK(audit.max_residual <= 1e-12);
    CHECK(std::fabs(audit.max_residual - primal_residual(p.model, x)) < 1e-12);

    x[0] += 0.25;
    std::stringstream again;
    write_lp(again, p.model);
    auto perturbed = stream_check_lp(again, x);
    double reference = primal_residual(p.model, x);
    CHECK(perturbed.max_residual > 0.1);
    CHECK(std::fabs(perturbed.max_residual - reference) < 1e-9);
}
