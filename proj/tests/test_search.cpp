#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "moser/moser.hpp"

using namespace moser;

namespace {

PointList pair2() { return {Point{0, 0, 0, 0}, Point{1, 0, 0, 0}}; }
PointList triangle3() { return canonize({Point{0, 0, 0, 0}, Point{1, 0, 0, 0}, Point{0, 1, 0, 0}}); }

}  // namespace

TEST_CASE("scorer caches by canonical form") {
    ChiGfScorer scorer(SolveMode::exact);
    auto m7 = test::load_points("m7.txt");
    CHECK(scorer.score(canonize(m7)) == make_rational(7, 2));
    CHECK(scorer.solves() == 1);
    CHECK(scorer.score(canonize(m7)) == make_rational(7, 2));
    CHECK(scorer.solves() == 1);
    CHECK(scorer.cache_size() == 1);
}

TEST_CASE("beam keeps everything at or above the cut value") {
    ChiGfScorer scorer(SolveMode::exact);

    SECTION("width zero and small inputs pass through unscored") {
        std::vector<PointList> xs{pair2(), triangle3()};
        CHECK(get_beam(xs, 0, scorer) == xs);
        CHECK(get_beam(xs, 5, scorer) == xs);
        CHECK(scorer.solves() == 0);
    }

    SECTION("ties at the cut are all kept") {
        std::vector<PointList> xs(5, triangle3());
        auto out = get_beam(xs, 2, scorer);
        CHECK(out.size() == 5);
    }

    SECTION("strictly lower values fall off") {
        std::vector<PointList> xs{pair2(), triangle3(), pair2(), triangle3(), pair2()};
        auto two = get_beam(xs, 2, scorer);
        REQUIRE(two.size() == 2);
        for (const auto& g : two) CHECK(g == triangle3());

        auto three = get_beam(xs, 3, scorer);
        CHECK(three.size() == 5);
    }
}

TEST_CASE("unscorable candidates are dropped and counted") {
    // A column cap of 2 lets the unit pair through and rejects the triangle.
    ChiGfScorer scorer(SolveMode::exact, 2);
    std::vector<PointList> xs{pair2(), triangle3(), triangle3(), pair2()};
    uint64_t dropped = 0;
    auto out = get_beam(xs, 1, scorer, &dropped);
    CHECK(dropped == 2);
    REQUIRE(out.size() == 2);
    for (const auto& g : out) CHECK(g == pair2());
}

TEST_CASE("children-only run reproduces direct enumeration") {
    auto m7 = canonize(test::load_points("m7.txt"));
    std::set<PointList> level8 = children(m7);

    SearchConfig cfg;
    cfg.beam_width = 0;
    cfg.min_vertices = 7;
    cfg.max_size = 8;
    cfg.children_only = true;
    ChiGfScorer scorer(SolveMode::exact);
    SearchState st;
    auto res = beam_search(m7, cfg, scorer, {}, &st);

    CHECK(res.stop_reason == "exhausted at size cap");
    CHECK(st.seen[7] == std::set<PointList>{m7});
    CHECK(st.seen[8] == level8);

    Rational best8(0);
    for (const PointList& g : level8) best8 = std::max(best8, scorer.score(g));
    REQUIRE(res.best.count(8) == 1);
    CHECK(res.best.at(8).value == best8);
    CHECK(best8 == make_rational(7, 2));
    CHECK(res.best.at(7).value == make_rational(7, 2));
    CHECK(res.dropped == 0);
}

TEST_CASE("identical configurations give identical runs") {
    auto m7 = test::load_points("m7.txt");
    SearchConfig cfg;
    cfg.beam_width = 3;
    cfg.max_iterations = 6;

    auto run = [&] {
        ChiGfScorer scorer(SolveMode::numeric);
        return beam_search(m7, cfg, scorer);
    };
    auto a = run();
    auto b = run();

    CHECK(a.stop_reason == b.stop_reason);
    REQUIRE(a.log.size() == b.log.size());
    for (size_t i = 0; i < a.log.size(); ++i) {
        CHECK(a.log[i].iteration == b.log[i].iteration);
        CHECK(a.log[i].size == b.log[i].size);
        CHECK(a.log[i].direction == b.log[i].direction);
        CHECK(a.log[i].candidates == b.log[i].candidates);
        CHECK(a.log[i].best_value == b.log[i].best_value);
    }
    REQUIRE(a.best.size() == b.best.size());
    for (const auto& [n, sb] : a.best) {
        REQUIRE(b.best.count(n) == 1);
        CHECK(b.best.at(n).value == sb.value);
        CHECK(b.best.at(n).graph == sb.graph);
    }
}

TEST_CASE("checkpoints restore a run mid-flight") {
    auto m7 = test::load_points("m7.txt");
    SearchConfig head;
    head.beam_width = 2;
    head.max_iterations = 3;

    ChiGfScorer scorer(SolveMode::numeric);
    SearchState live;
    beam_search(m7, head, scorer, {}, &live);

    std::stringstream file;
    write_checkpoint(file, live);
    SearchState restored = read_checkpoint(file);

    CHECK(restored.iteration == live.iteration);
    CHECK(restored.i == live.i);
    CHECK(restored.direction == live.direction);
    CHECK(restored.frontier == live.frontier);
    CHECK(restored.seen == live.seen);
    // Checkpoints omit empty forward entries; compare modulo those.
    auto nonempty = [](const std::map<uint32_t, std::vector<PointList>>& fwd) {
        std::map<uint32_t, std::vector<PointList>> out;
        for (const auto& [n, v] : fwd)
            if (!v.empty()) out.emplace(n, v);
        return out;
    };
    CHECK(nonempty(restored.forward) == nonempty(live.forward));
    CHECK(restored.best == live.best);

    SearchConfig tail = head;
    tail.max_iterations = 6;
    auto cont_live = beam_search(m7, tail, scorer, {}, &live);
    auto cont_restored = beam_search(m7, tail, scorer, {}, &restored);

    REQUIRE(cont_live.log.size() == cont_restored.log.size());
    for (size_t i = 0; i < cont_live.log.size(); ++i) {
        CHECK(cont_live.log[i].size == cont_restored.log[i].size);
        CHECK(cont_live.log[i].candidates == cont_restored.log[i].candidates);
        CHECK(cont_live.log[i].best_value == cont_restored.log[i].best_value);
    }
    for (const auto& [n, sb] : cont_live.best) {
        REQUIRE(cont_restored.best.count(n) == 1);
        CHECK(cont_restored.best.at(n).value == sb.value);
    }
}

TEST_CASE("bad checkpoints are rejected") {
    std::stringstream a("other-format 1\nend\n");
    CHECK_THROWS_AS(read_checkpoint(a), std::runtime_error);
    std::stringstream b("moser-search-checkpoint 1\nwhat 3\nend\n");
    CHECK_THROWS_AS(read_checkpoint(b), std::runtime_error);
}

TEST_CASE("stop conditions report their reasons") {
    auto m7 = test::load_points("m7.txt");

    SECTION("iteration limit") {
        SearchConfig cfg;
        cfg.beam_width = 2;
        cfg.max_iterations = 2;
        ChiGfScorer scorer(SolveMode::numeric);
        auto res = beam_search(m7, cfg, scorer);
        CHECK(res.stop_reason == "iteration limit");
        CHECK(res.iterations == 2);
        CHECK(res.log.size() == 2);
    }
    SECTION("time limit") {
        SearchConfig cfg;
        cfg.max_seconds = 1e-9;
        ChiGfScorer scorer(SolveMode::numeric);
        auto res = beam_search(m7, cfg, scorer);
        CHECK(res.stop_reason == "time limit");
    }
    SECTION("target reached") {
        SearchConfig cfg;
        cfg.beam_width = 4;
        cfg.min_vertices = 2;
        cfg.target = Rational(3);
        cfg.children_only = true;
        ChiGfScorer scorer(SolveMode::exact);
        auto res = beam_search(pair2(), cfg, scorer);
        CHECK(res.stop_reason == "target reached");
        REQUIRE(res.reached_target);
        CHECK(scorer.score(canonize(res.target_graph)) >= Rational(3) - rational_from_double(cfg.value_tol));
    }
}

TEST_CASE("greedy moves only on sufficient improvement") {
    ChiGfScorer scorer(SolveMode::exact);

    SECTION("a local maximum halts at once") {
        auto m7 = test::load_points("m7.txt");
        SearchConfig cfg;
        auto res = greedy_search(m7, 0.004, cfg, scorer);
        CHECK(res.stop_reason == "no improving child");
        CHECK(res.iterations == 1);
        CHECK(res.log.empty());
        CHECK(res.best.size() == 1);
        CHECK(res.best.at(7).value == make_rational(7, 2));
    }
    SECTION("improving chains climb until the size cap") {
        SearchConfig cfg;
        cfg.max_size = 3;
        cfg.min_vertices = 2;
        auto res = greedy_search(pair2(), 0.004, cfg, scorer);
        CHECK(res.stop_reason == "size cap");
        REQUIRE(res.best.count(3) == 1);
        CHECK(res.best.at(3).value == Rational(3));
        CHECK(res.log.size() == 1);
    }
    SECTION("an impossible threshold freezes the start") {
        SearchConfig cfg;
        cfg.min_vertices = 2;
        auto res = greedy_search(pair2(), 10.0, cfg, scorer);
        CHECK(res.stop_reason == "no improving child");
        CHECK(res.best.size() == 1);
    }
}

TEST_CASE("csv output is stable") {
    std::stringstream log;
    write_log_csv_header(log);
    write_log_csv_row(log, LogRow{3, 8, -1, 17, make_rational(7, 2)});
    CHECK(log.str() == "iteration,size,direction,candidates,best_value\n3,8,-1,17,3.500000000000\n");

    SearchResult res;
    res.best[7] = {make_rational(7, 2), {}};
    res.best[9] = {make_rational(32, 9), {}};
    std::stringstream fig;
    write_figure_csv(fig, res);
    CHECK(fig.str() == "n,best_chi_gf\n7,3.500000000000\n9,3.555555555556\n");
}
