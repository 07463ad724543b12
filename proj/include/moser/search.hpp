#pragma once

#include <chrono>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "canon.hpp"
#include "lp.hpp"
#include "rational.hpp"

namespace moser {

// Memoized chi_gf evaluator keyed by canonical form. Numeric scores are
// stored as their exact dyadic images so that beam ordering and threshold
// comparisons are deterministic.
class ChiGfScorer {
public:
    explicit ChiGfScorer(SolveMode mode = SolveMode::numeric, uint64_t exact_cap = 50'000)
        : mode_(mode), exact_cap_(exact_cap) {}

    const Rational& score(const PointList& canon) {
        auto it = cache_.find(canon);
        if (it != cache_.end()) return it->second;
        UnitGraph g = UnitGraph::build(canon);
        LPModel model = make_chi_gf_problem(g).model;
        Rational value;
        if (mode_ == SolveMode::exact) {
            Solution s = solve_exact(model, exact_cap_);
            if (s.status != SolveStatus::optimal)
                throw std::runtime_error("exact scoring failed: " +
                                         std::string(to_string(s.status)));
            value = s.objective;
        } else {
            typename Simplex<double>::Options opt;
            opt.opt_tol = 1e-9;
            opt.pivot_tol = 1e-9;
            opt.feas_tol = 1e-9;
            opt.bland = false;
            opt.max_iter = 200'000;
            auto r = Simplex<double>::solve(model, opt);
            if (r.status != SolveStatus::optimal) {
                opt.bland = true;  // retry stubborn instances with Bland
                r = Simplex<double>::solve(model, opt);
            }
            if (r.status != SolveStatus::optimal)
                throw std::runtime_error("numeric scoring failed: " +
                                         std::string(to_string(r.status)));
            value = rational_from_double(r.objective);
        }
        ++solves_;
        return cache_.emplace(canon, std::move(value)).first->second;
    }

    uint64_t solves() const { return solves_; }
    size_t cache_size() const { return cache_.size(); }
    SolveMode mode() const { return mode_; }

private:
    SolveMode mode_;
    uint64_t exact_cap_;
    std::map<PointList, Rational> cache_;
    uint64_t solves_ = 0;
};

struct SearchConfig {
    uint32_t beam_width = 100;  // 0 means unbounded
    uint32_t min_vertices = 7;
    uint32_t max_size = 0;        // 0 means unlimited
    uint64_t max_iterations = 0;  // 0 means unlimited
    double max_seconds = 0;       // 0 means unlimited
    std::optional<Rational> target;
    double value_tol = 1e-6;
    bool children_only = false;
};

struct LogRow {
    uint64_t iteration;
    uint32_t size;
    int direction;
    size_t candidates;
    Rational best_value;
};

struct SizeBest {
    Rational value;
    PointList graph;
};

struct SearchResult {
    std::map<uint32_t, SizeBest> best;  // best value seen per vertex count
    std::vector<LogRow> log;
    bool reached_target = false;
    PointList target_graph;
    uint64_t iterations = 0;
    uint64_t dropped = 0;  // candidates whose LP solve failed
    std::string stop_reason;
};

namespace detail {

struct ScoredLess {
    // Descending by value, ascending canonical form on ties.
    bool operator()(const std::pair<Rational, const PointList*>& a,
                    const std::pair<Rational, const PointList*>& b) const {
        int c = cmp(a.first, b.first);
        if (c != 0) return c > 0;
        return *a.second < *b.second;
    }
};

// Scoring failures drop the candidate instead of aborting the run.
inline const Rational* try_score(ChiGfScorer& scorer, const PointList& g, uint64_t& dropped) {
    try {
        return &scorer.score(g);
    } catch (const std::exception&) {
        ++dropped;
        return nullptr;
    }
}

}  // namespace detail

// Mutable search state; exposed so runs can be checkpointed and resumed.
struct SearchState {
    std::map<uint32_t, std::set<PointList>> seen;
    std::map<uint32_t, std::vector<PointList>> forward;
    std::map<uint32_t, Rational> best;  // reversal reference values
    std::vector<PointList> frontier;
    uint32_t i = 0;
    int direction = 1;
    uint64_t iteration = 0;

    static SearchState start_from(const PointList& seed, ChiGfScorer& scorer) {
        SearchState st;
        PointList c = canonize(seed);
        uint32_t n = uint32_t(c.size());
        st.best[n] = scorer.score(c);
        st.seen[n].insert(c);
        st.frontier = {c};
        st.i = n + 1;
        st.direction = 1;
        return st;
    }
};

// get_beam of the pseudocode: with more entries than the width, keep all
// entries whose value reaches the value of the width-th entry in descending
// order (ties are kept, so the result may exceed the width).
inline std::vector<PointList> get_beam(std::vector<PointList> xs, uint32_t width,
                                       ChiGfScorer& scorer, uint64_t* dropped = nullptr) {
    if (width == 0 || xs.size() <= width) return xs;
    uint64_t local = 0;
    std::vector<std::pair<Rational, const PointList*>> scored;
    scored.reserve(xs.size());
    for (const PointList& x : xs)
        if (const Rational* v = detail::try_score(scorer, x, local)) scored.emplace_back(*v, &x);
    if (dropped) *dropped += local;
    if (scored.size() <= width) {
        std::vector<PointList> out;
        for (const auto& [v, p] : scored) out.push_back(*p);
        return out;
    }
    std::sort(scored.begin(), scored.end(), detail::ScoredLess{});
    const Rational& threshold = scored[width - 1].first;
    std::vector<PointList> out;
    for (const auto& [v, p] : scored)
        if (v >= threshold) out.push_back(*p);
    return out;
}

// Backtracking beam search. Follows the published pseudocode, with four
// additions: the restart line reads the last nonempty seen level (the
// literal text reads an empty one and would spin), optional stop conditions
// (target, iteration, wall clock, size cap), a bounce off the size cap into
// the parents direction, and exhaustion detection when two consecutive
// restarts make no progress.
inline SearchResult beam_search(const PointList& seed, const SearchConfig& cfg,
                                ChiGfScorer& scorer,
                                const std::function<void(const LogRow&)>& on_log = {},
                                SearchState* resume = nullptr) {
    SearchResult res;
    SearchState local;
    SearchState& st = resume ? *resume : local;
    if (!resume || st.frontier.empty()) st = SearchState::start_from(seed, scorer);

    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    Rational target_cut;
    if (cfg.target) target_cut = *cfg.target - rational_from_double(cfg.value_tol);

    // Track the best value over everything scored, sizes included.
    auto note = [&](const PointList& g, const Rational& v) {
        uint32_t n = uint32_t(g.size());
        auto it = res.best.find(n);
        if (it == res.best.end() || v > it->second.value) res.best[n] = {v, g};
        if (cfg.target && v >= target_cut && !res.reached_target) {
            res.reached_target = true;
            res.target_graph = g;
        }
    };
    for (const auto& [n, level] : st.seen)
        for (const PointList& g : level)
            if (const Rational* v = detail::try_score(scorer, g, res.dropped)) note(g, *v);

    int restarts_without_growth = 0;
    while (true) {
        if (res.reached_target) {
            res.stop_reason = "target reached";
            break;
        }
        if (cfg.max_iterations && st.iteration >= cfg.max_iterations) {
            res.stop_reason = "iteration limit";
            break;
        }
        if (cfg.max_seconds > 0 && elapsed() > cfg.max_seconds) {
            res.stop_reason = "time limit";
            break;
        }

        bool over_cap = cfg.max_size && st.i > cfg.max_size;
        std::set<PointList> fresh;
        if (!over_cap) {
            const auto& seen_i = st.seen[st.i];
            for (const PointList& x : st.frontier) {
                std::set<PointList> moved =
                    st.direction == 1 ? children(x)
                                      : (x.size() >= 2 ? parents(x) : std::set<PointList>{});
                for (const PointList& c : moved)
                    if (!seen_i.count(c)) fresh.insert(c);
            }
        }

        if (fresh.empty()) {
            // Restart: resume above the deepest nonempty level.
            if (++restarts_without_growth >= 2) {
                res.stop_reason = "exhausted";
                break;
            }
            uint32_t i_max = 0;
            for (const auto& [n, level] : st.seen)
                if (!level.empty()) i_max = std::max(i_max, n);
            std::vector<PointList> pool(st.seen[i_max].begin(), st.seen[i_max].end());
            st.frontier = get_beam(std::move(pool), cfg.beam_width, scorer, &res.dropped);
            st.direction = 1;
            st.i = i_max + 1;
            if (cfg.max_size && st.i > cfg.max_size) {
                if (cfg.children_only || i_max <= cfg.min_vertices) {
                    res.stop_reason = "exhausted at size cap";
                    break;
                }
                st.direction = -1;
                st.i = i_max - 1;
            }
            continue;
        }
        restarts_without_growth = 0;

        auto& seen_i = st.seen[st.i];
        std::vector<PointList> batch(fresh.begin(), fresh.end());
        for (const PointList& g : batch) seen_i.insert(g);

        Rational new_best;
        bool first = true;
        std::vector<PointList> batch_ok;
        batch_ok.reserve(batch.size());
        for (const PointList& g : batch) {
            const Rational* v = detail::try_score(scorer, g, res.dropped);
            if (!v) continue;
            batch_ok.push_back(g);
            note(g, *v);
            if (first || *v > new_best) {
                new_best = *v;
                first = false;
            }
        }
        batch = std::move(batch_ok);
        if (batch.empty()) continue;  // whole generation unscorable; rescan

        ++st.iteration;
        LogRow row{st.iteration, st.i, st.direction, batch.size(), new_best};
        res.log.push_back(row);
        if (on_log) on_log(row);

        auto& best_i = st.best[st.i];
        bool reverse = !cfg.children_only && new_best >= best_i && st.i > cfg.min_vertices;
        if (reverse) {
            best_i = new_best;
            st.direction = -1;
            std::vector<PointList> beamed = get_beam(std::move(batch), cfg.beam_width, scorer, &res.dropped);
            std::vector<PointList> fwd = st.forward[st.i];
            fwd.insert(fwd.end(), beamed.begin(), beamed.end());
            st.forward[st.i] = get_beam(fwd, cfg.beam_width, scorer, &res.dropped);
            st.frontier = std::move(beamed);
        } else {
            st.direction = 1;
            std::vector<PointList> merged = st.forward[st.i];
            merged.insert(merged.end(), batch.begin(), batch.end());
            st.frontier = get_beam(std::move(merged), cfg.beam_width, scorer, &res.dropped);
            st.forward[st.i].clear();
        }
        st.i += st.direction;
        if (st.i < cfg.min_vertices) st.i = cfg.min_vertices;
    }
    res.iterations = st.iteration;
    return res;
}

// Greedy descent: repeatedly move to the best child while it improves the
// value by at least `threshold`. Equivalent to beam width 1 over children
// with first-improvement in value order.
inline SearchResult greedy_search(const PointList& seed, double threshold, const SearchConfig& cfg,
                                  ChiGfScorer& scorer,
                                  const std::function<void(const LogRow&)>& on_log = {}) {
    SearchResult res;
    PointList cur = canonize(seed);
    Rational cur_val = scorer.score(cur);
    Rational step = rational_from_double(threshold);
    res.best[uint32_t(cur.size())] = {cur_val, cur};
    Rational target_cut;
    if (cfg.target) target_cut = *cfg.target - rational_from_double(cfg.value_tol);
    uint64_t iter = 0;
    auto t0 = std::chrono::steady_clock::now();
    while (true) {
        if (cfg.target && cur_val >= target_cut) {
            res.reached_target = true;
            res.target_graph = cur;
            res.stop_reason = "target reached";
            break;
        }
        if (cfg.max_iterations && iter >= cfg.max_iterations) {
            res.stop_reason = "iteration limit";
            break;
        }
        if (cfg.max_seconds > 0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >
                cfg.max_seconds) {
            res.stop_reason = "time limit";
            break;
        }
        if (cfg.max_size && cur.size() >= cfg.max_size) {
            res.stop_reason = "size cap";
            break;
        }
        std::set<PointList> kids = children(cur);
        const PointList* pick = nullptr;
        Rational pick_val;
        for (const PointList& k : kids) {
            const Rational* v = detail::try_score(scorer, k, res.dropped);
            if (!v) continue;
            if (!pick || *v > pick_val || (*v == pick_val && k < *pick)) {
                pick = &k;
                pick_val = *v;
            }
        }
        ++iter;
        if (!pick || pick_val < cur_val + step) {
            res.stop_reason = "no improving child";
            break;
        }
        cur = *pick;
        cur_val = pick_val;
        uint32_t n = uint32_t(cur.size());
        auto it = res.best.find(n);
        if (it == res.best.end() || cur_val > it->second.value) res.best[n] = {cur_val, cur};
        LogRow row{iter, n, 1, kids.size(), cur_val};
        res.log.push_back(row);
        if (on_log) on_log(row);
    }
    res.iterations = iter;
    return res;
}

// Checkpoint serialization: plain text, graphs as coefficient quadruples.
namespace detail {
inline void write_graph_line(std::ostream& os, const PointList& g) {
    os << "g " << g.size();
    for (const Point& p : g) os << " " << p.a << " " << p.b << " " << p.c << " " << p.d;
    os << "\n";
}

inline PointList read_graph_line(std::istream& is) {
    std::string tag;
    size_t n;
    if (!(is >> tag >> n) || tag != "g") throw std::runtime_error("checkpoint: expected graph line");
    PointList g(n);
    for (Point& p : g)
        if (!(is >> p.a >> p.b >> p.c >> p.d)) throw std::runtime_error("checkpoint: truncated graph");
    return g;
}
}  // namespace detail

inline void write_checkpoint(std::ostream& os, const SearchState& st) {
    os << "moser-search-checkpoint 1\n";
    os << "iteration " << st.iteration << "\n";
    os << "i " << st.i << "\n";
    os << "direction " << st.direction << "\n";
    os << "frontier " << st.frontier.size() << "\n";
    for (const PointList& g : st.frontier) detail::write_graph_line(os, g);
    for (const auto& [n, level] : st.seen) {
        os << "seen " << n << " " << level.size() << "\n";
        for (const PointList& g : level) detail::write_graph_line(os, g);
    }
    for (const auto& [n, fwd] : st.forward) {
        if (fwd.empty()) continue;
        os << "forward " << n << " " << fwd.size() << "\n";
        for (const PointList& g : fwd) detail::write_graph_line(os, g);
    }
    for (const auto& [n, v] : st.best) os << "best " << n << " " << v.get_str() << "\n";
    os << "end\n";
}

inline SearchState read_checkpoint(std::istream& is) {
    SearchState st;
    std::string header;
    int version;
    if (!(is >> header >> version) || header != "moser-search-checkpoint" || version != 1)
        throw std::runtime_error("checkpoint: bad header");
    std::string key;
    while (is >> key && key != "end") {
        if (key == "iteration")
            is >> st.iteration;
        else if (key == "i")
            is >> st.i;
        else if (key == "direction")
            is >> st.direction;
        else if (key == "frontier") {
            size_t k;
            is >> k;
            st.frontier.resize(k);
            for (auto& g : st.frontier) g = detail::read_graph_line(is);
        } else if (key == "seen" || key == "forward") {
            uint32_t n;
            size_t k;
            is >> n >> k;
            for (size_t j = 0; j < k; ++j) {
                PointList g = detail::read_graph_line(is);
                if (key == "seen")
                    st.seen[n].insert(std::move(g));
                else
                    st.forward[n].push_back(std::move(g));
            }
        } else if (key == "best") {
            uint32_t n;
            std::string v;
            is >> n >> v;
            st.best[n] = parse_rational(v);
        } else {
            throw std::runtime_error("checkpoint: unexpected key '" + key + "'");
        }
    }
    return st;
}

inline void write_log_csv_header(std::ostream& os) {
    os << "iteration,size,direction,candidates,best_value\n";
}

inline void write_log_csv_row(std::ostream& os, const LogRow& row) {
    os << row.iteration << "," << row.size << "," << row.direction << "," << row.candidates << ","
       << format_decimal12(row.best_value) << "\n";
}

inline void write_figure_csv(std::ostream& os, const SearchResult& res) {
    os << "n,best_chi_gf\n";
    for (const auto& [n, b] : res.best)
        os << n << "," << format_decimal12(b.value) << "\n";
}

}  // namespace moser
