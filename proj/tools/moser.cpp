// moser: command line surface for the unit-distance graph toolkit.
// Exit codes: 0 success, 1 usage error, 2 computation failure,
// 3 verification failure.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moser/moser.hpp"

namespace {

using namespace moser;

constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;
constexpr int kExitVerification = 3;

struct CommandError : std::runtime_error {
    int code;
    CommandError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

PointList load_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CommandError(kExitUsage, "cannot open graph file: " + path);
    return read_points(in);
}

UnitGraph load_graph(const std::string& path) { return UnitGraph::build(load_points(path)); }

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw CommandError(kExitComputation, "cannot write: " + path);
    return out;
}

// Shared solver configuration; the external command template comes from
// --solver-cmd or the MOSER_LP_SOLVER_CMD environment variable.
struct ModeFlags {
    std::string mode = "numeric";
    std::string solver_cmd;
    double feas_tol = 1e-9;
    uint64_t exact_cap = 50'000;

    void attach(CLI::App* cmd) {
        cmd->add_option("--mode", mode, "LP backend: exact, numeric or external")
            ->check(CLI::IsMember({"exact", "numeric", "external"}))
            ->capture_default_str();
        cmd->add_flag_callback("--exact", [this] { mode = "exact"; }, "shorthand for --mode exact");
        cmd->add_flag_callback("--numeric", [this] { mode = "numeric"; },
                               "shorthand for --mode numeric");
        cmd->add_flag_callback("--external", [this] { mode = "external"; },
                               "shorthand for --mode external");
        cmd->add_option("--solver-cmd", solver_cmd,
                        "external solver command template with {lp} and {sol}");
        cmd->add_option("--feas-tol", feas_tol, "numeric feasibility tolerance")
            ->capture_default_str();
        cmd->add_option("--exact-cap", exact_cap, "column cap for the exact simplex")
            ->capture_default_str();
    }

    SolveOptions options() const {
        SolveOptions o;
        o.mode = mode == "exact"    ? SolveMode::exact
                 : mode == "numeric" ? SolveMode::numeric
                                     : SolveMode::external;
        o.feas_tol = feas_tol;
        o.exact_column_cap = exact_cap;
        o.external_cmd = solver_cmd;
        if (o.external_cmd.empty())
            if (const char* env = std::getenv("MOSER_LP_SOLVER_CMD")) o.external_cmd = env;
        if (o.mode == SolveMode::external && o.external_cmd.empty())
            throw CommandError(kExitUsage,
                               "external mode needs --solver-cmd or MOSER_LP_SOLVER_CMD");
        return o;
    }
};

std::string value_line(const Rational& v, bool exact) {
    if (exact) return v.get_str() + " = " + format_decimal12(v);
    return format_decimal12(v);
}

Solution solve_or_die(const LPModel& model, const SolveOptions& o, const std::string& stage) {
    Solution s;
    try {
        s = solve(model, o);
    } catch (const std::exception& e) {
        throw CommandError(kExitComputation, stage + ": " + e.what());
    }
    if (s.status != SolveStatus::optimal)
        throw CommandError(kExitComputation, stage + ": solver returned " +
                                                 std::string(to_string(s.status)) +
                                                 (s.message.empty() ? "" : " (" + s.message + ")"));
    return s;
}

// Colour files pair with the graph file's line order; vertices are the
// sorted point order, so colours are carried across by point identity.
std::vector<uint32_t> colours_by_vertex(const UnitGraph& g, const PointList& file_points,
                                        const std::vector<uint32_t>& file_colours) {
    if (file_colours.size() != file_points.size())
        throw CommandError(kExitUsage, "colour count does not match vertex count");
    std::vector<uint32_t> by_vertex(g.n());
    for (size_t i = 0; i < file_points.size(); ++i) {
        auto it = std::lower_bound(g.points().begin(), g.points().end(), file_points[i]);
        by_vertex[size_t(it - g.points().begin())] = file_colours[i];
    }
    return by_vertex;
}

// Champions are re-scored exactly when the column count permits; larger
// graphs keep their numeric value.
void print_best_per_size(const SearchResult& res, uint64_t exact_cap) {
    for (const auto& [n, b] : res.best) {
        std::string shown;
        try {
            UnitGraph g = UnitGraph::build(b.graph);
            Solution s = chi_gf(g, [&] {
                SolveOptions o;
                o.mode = SolveMode::exact;
                o.exact_column_cap = exact_cap;
                return o;
            }());
            if (s.status == SolveStatus::optimal) shown = value_line(s.objective, true);
        } catch (const std::exception&) {
        }
        if (shown.empty()) shown = value_line(b.value, false);
        std::cout << "best " << n << " " << shown << "\n";
    }
}

struct SearchFlags {
    uint32_t beam = 100;
    uint32_t min_vertices = 7;
    uint32_t max_size = 0;
    uint64_t max_iterations = 0;
    double max_seconds = 0;
    std::string target;
    double value_tol = 1e-6;
    bool children_only = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--beam", beam, "beam width; 0 means unbounded")->capture_default_str();
        cmd->add_option("--min-vertices", min_vertices, "smallest size the search may visit")
            ->capture_default_str();
        cmd->add_option("--max-size", max_size, "largest size; 0 means unlimited")
            ->capture_default_str();
        cmd->add_option("--max-iterations", max_iterations, "iteration cap; 0 means unlimited")
            ->capture_default_str();
        cmd->add_option("--max-seconds", max_seconds, "wall clock cap; 0 means unlimited")
            ->capture_default_str();
        cmd->add_option("--target", target, "stop once a graph reaches this value (rational)");
        cmd->add_option("--value-tol", value_tol, "tolerance for the target comparison")
            ->capture_default_str();
        cmd->add_flag("--children-only", children_only, "never expand parents (no backtracking)");
    }

    SearchConfig config() const {
        SearchConfig cfg;
        cfg.beam_width = beam;
        cfg.min_vertices = min_vertices;
        cfg.max_size = max_size;
        cfg.max_iterations = max_iterations;
        cfg.max_seconds = max_seconds;
        cfg.value_tol = value_tol;
        cfg.children_only = children_only;
        if (!target.empty()) cfg.target = parse_rational(target);
        return cfg;
    }
};

void report_search(const SearchResult& res, uint64_t exact_cap) {
    std::cout << "stop " << res.stop_reason << "\n";
    std::cout << "iterations " << res.iterations << "\n";
    if (res.dropped) std::cout << "dropped " << res.dropped << "\n";
    print_best_per_size(res, exact_cap);
    if (res.reached_target) {
        std::cout << "target_graph";
        for (const Point& p : res.target_graph)
            std::cout << " (" << p.a << "," << p.b << "," << p.c << "," << p.d << ")";
        std::cout << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"unit-distance graphs in the Moser lattice: fractional and geometric "
                 "fractional chromatic numbers, certificates, search"};
    app.require_subcommand(1);

    // graph info
    auto* graph = app.add_subcommand("graph", "graph structure");
    graph->require_subcommand(1);
    auto* info = graph->add_subcommand("info", "vertex and edge counts");
    std::string info_file;
    info->add_option("file", info_file, "graph file")->required();
    info->callback([&] {
        UnitGraph g = load_graph(info_file);
        std::cout << "vertices " << g.n() << "\n";
        std::cout << "edges " << g.edge_count() << "\n";
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      (unsigned long long)graph_hash(g.points()));
        std::cout << "canonical_hash " << buf << "\n";
    });

    // indep count | enumerate
    auto* indep = app.add_subcommand("indep", "independent sets");
    indep->require_subcommand(1);
    std::string indep_file, indep_out;
    auto* icount = indep->add_subcommand("count", "count nonempty independent sets");
    icount->add_option("file", indep_file, "graph file")->required();
    icount->callback([&] {
        UnitGraph g = load_graph(indep_file);
        size_t k = independent_sets(g).size();
        std::cout << "independent_sets_nonempty " << k << "\n";
        std::cout << "independent_sets_with_empty " << k + 1 << "\n";
    });
    auto* ienum = indep->add_subcommand("enumerate", "list independent sets in column order");
    ienum->add_option("file", indep_file, "graph file")->required();
    ienum->add_option("--out", indep_out, "write to file instead of stdout");
    ienum->callback([&] {
        UnitGraph g = load_graph(indep_file);
        auto sets = independent_sets(g);
        std::ostream* os = &std::cout;
        std::ofstream f;
        if (!indep_out.empty()) {
            f = open_out(indep_out);
            os = &f;
        }
        for (const VertexSet& s : sets) {
            bool first = true;
            s.for_each([&](uint32_t v) {
                *os << (first ? "" : ",") << v;
                first = false;
            });
            *os << "\n";
        }
    });

    // alpha
    auto* alpha = app.add_subcommand("alpha", "independence number");
    std::string alpha_file;
    alpha->add_option("file", alpha_file, "graph file")->required();
    alpha->callback([&] {
        UnitGraph g = load_graph(alpha_file);
        VertexSet s = maximum_independent_set(g);
        std::cout << "alpha " << s.count() << "\n";
        std::cout << "witness";
        s.for_each([&](uint32_t v) { std::cout << " " << v; });
        std::cout << "\n";
    });

    // hall
    auto* hall = app.add_subcommand("hall", "Hall ratio (max |H|/alpha(H) over induced H)");
    std::string hall_file;
    hall->add_option("file", hall_file, "graph file")->required();
    hall->callback([&] {
        UnitGraph g = load_graph(hall_file);
        Rational r = hall_ratio(g);
        std::cout << "hall_ratio " << value_line(r, true) << "\n";
    });

    // congr classes | constraints
    auto* congr = app.add_subcommand("congr", "congruence classes of independent sets");
    congr->require_subcommand(1);
    std::string congr_file, congr_out;
    auto* cclasses = congr->add_subcommand("classes", "class and spanning pair counts");
    cclasses->add_option("file", congr_file, "graph file")->required();
    cclasses->callback([&] {
        UnitGraph g = load_graph(congr_file);
        auto sets = independent_sets(g);
        auto classes = congruence_classes(g, sets);
        size_t pairs = 0;
        for (const auto& c : classes) pairs += c.size() - 1;
        std::cout << "independent_sets_nonempty " << sets.size() << "\n";
        std::cout << "congruence_classes " << classes.size() << "\n";
        std::cout << "spanning_pairs " << pairs << "\n";
    });
    auto* cconstr = congr->add_subcommand("constraints", "export the constraint system");
    cconstr->add_option("file", congr_file, "graph file")->required();
    cconstr->add_option("--out", congr_out, "output path")->required();
    cconstr->callback([&] {
        UnitGraph g = load_graph(congr_file);
        ConstraintSystem cs = build_constraints(g);
        SparseConstraints sp = sparse_constraints(cs);
        auto f = open_out(congr_out);
        write_constraints(f, cs, sp);
        std::cout << "cols " << cs.n_cols() << "\n";
        std::cout << "rows " << cs.n_rows() << "\n";
    });

    // lp chif | chigf | export
    auto* lp = app.add_subcommand("lp", "fractional colouring linear programs");
    lp->require_subcommand(1);
    std::string lp_file, lp_out, lp_kind = "chigf", lp_target = "0";
    ModeFlags lp_mode;
    auto* chif = lp->add_subcommand("chif", "fractional chromatic number");
    chif->add_option("file", lp_file, "graph file")->required();
    lp_mode.attach(chif);
    chif->callback([&] {
        UnitGraph g = load_graph(lp_file);
        SolveOptions o = lp_mode.options();
        Solution s = solve_or_die(chi_f_model(g, independent_sets(g)), o, "chi_f");
        std::cout << "chi_f " << value_line(s.objective, s.exact) << "\n";
    });
    auto* chigf = lp->add_subcommand("chigf", "geometric fractional chromatic number");
    chigf->add_option("file", lp_file, "graph file")->required();
    lp_mode.attach(chigf);
    chigf->callback([&] {
        UnitGraph g = load_graph(lp_file);
        SolveOptions o = lp_mode.options();
        // The constraint structures dwarf the model at large sizes; an
        // external solver subprocess needs the memory more than we do.
        LPModel model;
        {
            ChiGfProblem prob = make_chi_gf_problem(g);
            std::cout << "cols " << prob.cs.n_cols() << "\n";
            std::cout << "rows " << prob.cs.n_rows() << "\n";
            model = std::move(prob.model);
        }
        Solution s = solve_or_die(model, o, "chi_gf");
        std::cout << "chi_gf " << value_line(s.objective, s.exact) << "\n";
    });
    auto* lpexport = lp->add_subcommand("export", "write an LP text file");
    lpexport->add_option("file", lp_file, "graph file")->required();
    lpexport->add_option("--kind", lp_kind, "chif, chigf or margin")
        ->check(CLI::IsMember({"chif", "chigf", "margin"}))
        ->capture_default_str();
    lpexport->add_option("--target", lp_target, "margin target value (rational)");
    lpexport->add_option("--out", lp_out, "output path")->required();
    lpexport->callback([&] {
        UnitGraph g = load_graph(lp_file);
        LPModel model;
        if (lp_kind == "chif") {
            model = chi_f_model(g, independent_sets(g));
        } else {
            ChiGfProblem prob = make_chi_gf_problem(g);
            model = lp_kind == "chigf"
                        ? prob.model
                        : max_margin_model(prob.cs, prob.sp, parse_rational(lp_target));
        }
        auto f = open_out(lp_out);
        write_lp(f, model);
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)model_hash(model));
        std::cout << "vars " << model.n_vars << "\n";
        std::cout << "rows " << model.rows.size() << "\n";
        std::cout << "model_hash " << buf << "\n";
    });

    // colouring verify
    auto* colouring = app.add_subcommand("colouring", "proper colourings as fractional data");
    colouring->require_subcommand(1);
    std::string col_graph, col_file;
    auto* cverify = colouring->add_subcommand(
        "verify", "check a colour vector: properness, regularity, congruence balance");
    cverify->add_option("graph", col_graph, "graph file")->required();
    cverify->add_option("colours", col_file, "one colour per graph file line")->required();
    cverify->callback([&] {
        PointList pts = load_points(col_graph);
        UnitGraph g = UnitGraph::build(pts);
        std::ifstream in(col_file);
        if (!in) throw CommandError(kExitUsage, "cannot open colour file: " + col_file);
        std::vector<uint32_t> file_colours = read_colours(in);
        WeightFunction gamma = colouring_weights(colours_by_vertex(g, pts, file_colours));
        GfcReport rep = verify_colouring_in_gfc(g, gamma);
        if (!rep.ok()) {
            std::cout << "invalid: " << rep.message << "\n";
            throw CommandError(kExitVerification, "colouring verification failed");
        }
        std::cout << "valid gfc colouring, weight " << gamma.total_weight().get_str() << "\n";
    });

    // cube-colour
    auto* cube = app.add_subcommand("cube-colour", "periodic colouring from a cube basis");
    std::string cube_file, cube_out;
    int cube_n = 1;
    uint64_t cube_cap = 81;
    cube->add_option("file", cube_file, "graph file")->required();
    cube->add_option("--n-cube", cube_n, "coefficient cube radius")->capture_default_str();
    cube->add_option("--cap", cube_cap, "largest cube point count accepted")
        ->capture_default_str();
    cube->add_option("--out", cube_out, "write the aggregate weights");
    cube->callback([&] {
        UnitGraph g = load_graph(cube_file);
        CubeColouring cc = cube_colouring(g, cube_n, cube_cap);
        std::cout << "cube_vertices " << cc.cube_vertices << "\n";
        std::cout << "basis " << cc.basis.size() << "\n";
        std::cout << "weight " << value_line(cc.weight, true) << "\n";
        std::cout << "support " << cc.gamma.support_size() << "\n";
        if (!cube_out.empty()) {
            auto f = open_out(cube_out);
            write_weights(f, cc.gamma);
        }
    });

    // certify
    auto* certify_cmd = app.add_subcommand("certify", "produce a rational dual witness");
    std::string cert_graph, cert_target, cert_eps, cert_out;
    ModeFlags cert_mode;
    certify_cmd->add_option("graph", cert_graph, "graph file")->required();
    certify_cmd->add_option("--target", cert_target, "claimed lower bound (rational)")
        ->required();
    certify_cmd->add_option("--eps", cert_eps, "sharp-set threshold (rational)");
    certify_cmd->add_option("--out", cert_out, "witness output path");
    cert_mode.attach(certify_cmd);
    certify_cmd->callback([&] {
        UnitGraph g = load_graph(cert_graph);
        ConstraintSystem cs = build_constraints(g);
        SparseConstraints sp = sparse_constraints(cs);
        CertifyOptions opt;
        opt.solve = cert_mode.options();
        if (opt.solve.mode == SolveMode::exact)
            throw CommandError(kExitUsage, "certify runs the margin LP numerically or externally");
        if (!cert_eps.empty()) opt.eps = parse_rational(cert_eps);
        Rational target = parse_rational(cert_target);
        CertifyReport rep;
        try {
            rep = certify(cs, sp, target, opt);
        } catch (const std::exception& e) {
            throw CommandError(kExitComputation, std::string("certify: ") + e.what());
        }
        std::cout << "target " << target.get_str() << "\n";
        std::cout << "margin " << format_decimal12(rep.margin) << "\n";
        std::cout << "sharp " << rep.sharp_count << "\n";
        std::cout << "violated_before_projection " << rep.violated_before_projection << "\n";
        std::cout << "verdict " << (rep.verdict ? "true" : "false") << "\n";
        if (!rep.message.empty()) std::cout << "message " << rep.message << "\n";
        if (rep.verdict && !cert_out.empty()) {
            auto f = open_out(cert_out);
            write_witness(f, rep.witness);
            std::cout << "witness_file " << cert_out << "\n";
        }
        if (!rep.verdict) throw CommandError(kExitVerification, "no witness at this target");
    });

    // witness check
    auto* witness = app.add_subcommand("witness", "audit witness files");
    witness->require_subcommand(1);
    std::string wit_graph, wit_file, wit_constraints;
    auto* wcheck = witness->add_subcommand("check", "exact feasibility of a stored witness");
    wcheck->add_option("graph", wit_graph, "graph file")->required();
    wcheck->add_option("witness", wit_file, "witness file")->required();
    wcheck->add_option("--constraints", wit_constraints,
                       "check against an exported constraint file instead of rebuilding");
    wcheck->callback([&] {
        std::ifstream wf(wit_file);
        if (!wf) throw CommandError(kExitUsage, "cannot open witness file: " + wit_file);
        DualWitness w = read_witness(wf);
        bool ok;
        if (wit_constraints.empty()) {
            UnitGraph g = load_graph(wit_graph);
            ConstraintSystem cs = build_constraints(g);
            SparseConstraints sp = sparse_constraints(cs);
            ok = check_witness(sp, cs.e_cols, cs.n_cols(), w);
        } else {
            std::ifstream cf(wit_constraints);
            if (!cf)
                throw CommandError(kExitUsage, "cannot open constraints: " + wit_constraints);
            ImportedConstraints ic = read_constraints(cf);
            ok = check_witness(ic.sparse, ic.e_cols, ic.n_cols, w);
        }
        std::cout << "target " << w.target.get_str() << "\n";
        std::cout << "witness " << (ok ? "valid" : "invalid") << "\n";
        if (!ok) throw CommandError(kExitVerification, "witness check failed");
    });

    // search run | greedy | descendants | figure2
    auto* search = app.add_subcommand("search", "beam search for high chi_gf graphs");
    search->require_subcommand(1);
    std::string srch_graph, srch_log, srch_fig, srch_ckpt_out, srch_ckpt_in;
    SearchFlags srch;
    ModeFlags srch_mode;
    double greedy_threshold = 0.004;
    uint64_t desc_sample = 0;
    uint64_t desc_seed = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("graph", srch_graph, "seed graph file")->required();
        srch.attach(cmd);
        srch_mode.attach(cmd);
        cmd->add_option("--log", srch_log, "per-iteration CSV log path");
    };

    auto* srun = search->add_subcommand("run", "backtracking beam search");
    add_common(srun);
    srun->add_option("--figure2", srch_fig, "best-per-size CSV path");
    srun->add_option("--checkpoint", srch_ckpt_out, "write final state here");
    srun->add_option("--resume", srch_ckpt_in, "resume from a checkpoint file");
    srun->callback([&] {
        PointList seed = load_points(srch_graph);
        SolveOptions so = srch_mode.options();
        ChiGfScorer scorer(so.mode, so.exact_column_cap);
        SearchConfig cfg = srch.config();
        std::ofstream logf;
        std::function<void(const LogRow&)> on_log;
        if (!srch_log.empty()) {
            logf = open_out(srch_log);
            write_log_csv_header(logf);
            on_log = [&](const LogRow& row) { write_log_csv_row(logf, row); };
        }
        SearchState state;
        SearchState* resume = nullptr;
        if (!srch_ckpt_in.empty()) {
            std::ifstream ck(srch_ckpt_in);
            if (!ck) throw CommandError(kExitUsage, "cannot open checkpoint: " + srch_ckpt_in);
            state = read_checkpoint(ck);
            resume = &state;
        } else if (!srch_ckpt_out.empty()) {
            resume = &state;
        }
        SearchResult res = beam_search(seed, cfg, scorer, on_log, resume);
        report_search(res, so.exact_column_cap);
        std::cout << "lp_solves " << scorer.solves() << "\n";
        if (!srch_fig.empty()) {
            auto f = open_out(srch_fig);
            write_figure_csv(f, res);
        }
        if (!srch_ckpt_out.empty()) {
            auto f = open_out(srch_ckpt_out);
            write_checkpoint(f, state);
        }
    });

    auto* sgreedy = search->add_subcommand("greedy", "best-child descent");
    add_common(sgreedy);
    sgreedy->add_option("--threshold", greedy_threshold, "minimum improvement per step")
        ->capture_default_str();
    sgreedy->callback([&] {
        PointList seed = load_points(srch_graph);
        SolveOptions so = srch_mode.options();
        ChiGfScorer scorer(so.mode, so.exact_column_cap);
        std::ofstream logf;
        std::function<void(const LogRow&)> on_log;
        if (!srch_log.empty()) {
            logf = open_out(srch_log);
            write_log_csv_header(logf);
            on_log = [&](const LogRow& row) { write_log_csv_row(logf, row); };
        }
        SearchResult res = greedy_search(seed, greedy_threshold, srch.config(), scorer, on_log);
        report_search(res, so.exact_column_cap);
        std::cout << "lp_solves " << scorer.solves() << "\n";
    });

    auto* sdesc = search->add_subcommand("descendants",
                                         "score all children and sampled grandchildren");
    sdesc->add_option("graph", srch_graph, "graph file")->required();
    srch_mode.attach(sdesc);
    sdesc->add_option("--sample", desc_sample, "number of grandchildren to sample (0: none)")
        ->capture_default_str();
    sdesc->add_option("--seed", desc_seed, "sampling seed")->capture_default_str();
    sdesc->callback([&] {
        PointList pts = canonize(load_points(srch_graph));
        SolveOptions so = srch_mode.options();
        ChiGfScorer scorer(so.mode, so.exact_column_cap);
        auto kids = children(pts);
        std::cout << "children " << kids.size() << "\n";
        bool first = true;
        Rational lo, hi;
        for (const PointList& k : kids) {
            const Rational& v = scorer.score(k);
            if (first || v < lo) lo = v;
            if (first || v > hi) hi = v;
            first = false;
        }
        if (!first) {
            std::cout << "children_min " << value_line(lo, so.mode == SolveMode::exact) << "\n";
            std::cout << "children_max " << value_line(hi, so.mode == SolveMode::exact) << "\n";
        }
        if (desc_sample > 0 && !kids.empty()) {
            std::vector<PointList> pool(kids.begin(), kids.end());
            std::mt19937_64 rng(desc_seed);
            std::set<PointList> picked;
            for (uint64_t t = 0; t < desc_sample; ++t) {
                const PointList& parent = pool[rng() % pool.size()];
                auto gkids = children(parent);
                if (gkids.empty()) continue;
                auto it = gkids.begin();
                std::advance(it, long(rng() % gkids.size()));
                picked.insert(*it);
            }
            first = true;
            for (const PointList& gk : picked) {
                const Rational& v = scorer.score(gk);
                if (first || v < lo) lo = v;
                if (first || v > hi) hi = v;
                first = false;
            }
            std::cout << "grandchildren_sampled " << picked.size() << "\n";
            if (!first) {
                std::cout << "grandchildren_min "
                          << value_line(lo, so.mode == SolveMode::exact) << "\n";
                std::cout << "grandchildren_max "
                          << value_line(hi, so.mode == SolveMode::exact) << "\n";
            }
        }
        std::cout << "lp_solves " << scorer.solves() << "\n";
    });

    auto* sfig = search->add_subcommand("figure2", "beam run reporting best value per size");
    add_common(sfig);
    std::string fig_out;
    sfig->add_option("--out", fig_out, "CSV output path")->required();
    sfig->callback([&] {
        PointList seed = load_points(srch_graph);
        SolveOptions so = srch_mode.options();
        ChiGfScorer scorer(so.mode, so.exact_column_cap);
        std::ofstream logf;
        std::function<void(const LogRow&)> on_log;
        if (!srch_log.empty()) {
            logf = open_out(srch_log);
            write_log_csv_header(logf);
            on_log = [&](const LogRow& row) { write_log_csv_row(logf, row); };
        }
        SearchResult res = beam_search(seed, srch.config(), scorer, on_log);
        report_search(res, so.exact_column_cap);
        std::cout << "lp_solves " << scorer.solves() << "\n";
        auto f = open_out(fig_out);
        write_figure_csv(f, res);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CommandError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
}
