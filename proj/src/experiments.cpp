#include "rulek/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "rulek/random.hpp"

namespace rulek {

namespace {

constexpr std::uint64_t kGridStreamTag = 0x67726964'63647321ULL;

std::string trial_message(std::size_t n, double ell, std::size_t trial, const std::string& cause) {
    std::ostringstream msg;
    msg << "trial n=" << n << " ell=" << ell << " index=" << trial << ": " << cause;
    return msg.str();
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

// Uniform point of D1(p) ∩ Q by rejection from the bounding box.
Point sample_in_local_disk(Rng& rng, Point p, double x0, double x1, double y0, double y1) {
    for (;;) {
        const Point c{rng.uniform(x0, x1), rng.uniform(y0, y1)};
        if (squared_distance(c, p) <= 1.0) return c;
    }
}

bool witness_connected(const std::vector<Point>& pts) {
    std::vector<char> seen(pts.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t a = stack.back();
        stack.pop_back();
        for (std::size_t b = 0; b < pts.size(); ++b) {
            if (!seen[b] && within_unit(pts[a], pts[b])) {
                seen[b] = 1;
                ++reached;
                stack.push_back(b);
            }
        }
    }
    return reached == pts.size();
}

}  // namespace

TrialFailure::TrialFailure(std::size_t n, double ell, std::size_t trial, const std::string& cause)
    : std::runtime_error(trial_message(n, ell, trial, cause)) {}

double FamilyRule::side_for(std::size_t n) const {
    const auto x = static_cast<double>(n);
    switch (kind) {
        case Kind::SqrtNOverLogN:
            return c * std::sqrt(x / std::log(x));
        case Kind::Power:
            return c * std::pow(x, beta);
    }
    return 0.0;
}

std::vector<ScheduleCell> ExperimentConfig::schedule() const {
    std::vector<ScheduleCell> out = cells;
    if (family) {
        for (std::size_t n : family->n_values) out.push_back({n, family->side_for(n)});
    }
    return out;
}

void ExperimentConfig::validate() const {
    require(k >= 1, "k: must be >= 1");
    require(trials >= 1, "trials: must be >= 1");
    require(work_cap >= 1, "work_cap: must be >= 1");
    if (family) {
        require(family->c > 0.0, "schedule.c: must be > 0");
        require(!family->n_values.empty(), "schedule.n: family rule needs at least one n");
        if (family->kind == FamilyRule::Kind::Power)
            require(family->beta < 0.5, "schedule.beta: must be < 1/2 so that ell = o(sqrt(n))");
        for (std::size_t n : family->n_values)
            require(n >= 2, "schedule.n: family rules need n >= 2");
    }
    const auto sched = schedule();
    require(!sched.empty(), "schedule: no (n, ell) cells");
    for (const auto& cell : sched) {
        require(cell.n >= 1, "schedule.n: must be >= 1");
        if (!(cell.ell > 1.0) || !std::isfinite(cell.ell)) {
            std::ostringstream msg;
            msg << "schedule.ell: every side must be > 1 (n=" << cell.n << " gives " << cell.ell << ")";
            throw std::invalid_argument(msg.str());
        }
    }
}

std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t n, double ell, std::uint64_t trial) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ n);
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(ell));
    return splitmix64(h ^ trial);
}

Instance generate_instance(std::size_t n, double ell, std::uint64_t seed) {
    require(n >= 1, "n: must be >= 1");
    const SquareRegion q(ell);
    Rng rng(seed);
    Instance inst;
    inst.side = q.side();
    inst.points.resize(n);
    for (auto& p : inst.points) {
        p.x = rng.uniform01() * ell;
        p.y = rng.uniform01() * ell;
    }
    return inst;
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t n, double ell, std::size_t trial_index) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.n = n;
    rec.ell = ell;
    rec.k = cfg.k;
    rec.trial_index = trial_index;
    rec.seed = derive_trial_seed(cfg.master_seed, n, ell, trial_index);

    try {
        const UnitDiskGraph g = build_graph(generate_instance(n, ell, rec.seed));
        const auto& t = cfg.toggles;
        rec.components = component_count(g);
        const RuleKOptions opts{cfg.at_most_k, cfg.work_cap};

        std::optional<CdsResult> full;
        if (t.rule_k) {
            full = rule_k(g, cfg.k, opts);
            rec.c_k = full->size;
            rec.u_k = full->excluded_count;
            rec.is_cds = full->verified_dominating && full->verified_component_preserving;
        }
        if (t.marking) {
            const VertexSet marked = marking_process(g);
            rec.marking_size = marked.size();
            if (t.rule_k) rec.restricted_size = rule_k_restricted(g, cfg.k, marked, opts).size;
        }
        if (t.local_maxima) rec.local_max_count = local_maxima(g).size();
        if (t.grid_cds) {
            Rng grid_rng(splitmix64(rec.seed ^ kGridStreamTag));
            const GridCdsResult grid = grid_cds(g, grid_rng);
            rec.grid_size = grid.members.size();
            rec.b_event = grid.all_cells_occupied;
            rec.grid_is_cds = is_cds(g, grid.members);
            rec.factor81 = factor81_check(g, grid);
        }
        if (t.oracle && n <= cfg.oracle_cap) rec.opt_size = min_cds_bruteforce(g, nullptr, cfg.oracle_cap).opt_size;
        if (t.degree_tail) {
            std::size_t rho = 0;
            for (VertexId u : g.neighbors(1)) rho += u > 1 ? 1 : 0;
            rec.rho_first = rho;
            rec.degree_tail_event = static_cast<double>(rho) <
                                    static_cast<double>(n - 1) * std::numbers::pi / (8.0 * ell * ell);
        }
    } catch (const std::exception& e) {
        throw TrialFailure(n, ell, trial_index, e.what());
    }

    if (cfg.record_timing) {
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return rec;
}

SweepSummary summarize(const std::vector<ScheduleCell>& schedule, std::vector<TrialRecord> records,
                       unsigned k) {
    std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.ell != b.ell) return a.ell < b.ell;
        return a.trial_index < b.trial_index;
    });

    SweepSummary out;
    for (const auto& cell : schedule) {
        CellSummary cs;
        cs.n = cell.n;
        cs.ell = cell.ell;
        if (cell.ell > std::sqrt(std::numbers::pi)) cs.curves = theoretical_curves(cell.n, cell.ell, k);

        const auto add = [&cs](const char* name, double v) { cs.stats[name].add(v); };
        for (const auto& r : records) {
            if (r.n != cell.n || r.ell != cell.ell) continue;
            ++cs.trials;
            if (!r.error.empty()) {
                ++cs.failures;
                continue;
            }
            const double side_sq = r.ell * r.ell;
            if (r.c_k) {
                add("c_k", static_cast<double>(*r.c_k));
                add("c_k_over_ellsq", static_cast<double>(*r.c_k) / side_sq);
            }
            if (r.u_k) add("u_k", static_cast<double>(*r.u_k));
            if (r.is_cds) add("is_cds", *r.is_cds ? 1.0 : 0.0);
            if (r.marking_size) {
                add("m_marked", static_cast<double>(*r.marking_size));
                add("m_equals_n", *r.marking_size == r.n ? 1.0 : 0.0);
            }
            if (r.restricted_size) add("c_k_restricted", static_cast<double>(*r.restricted_size));
            if (r.local_max_count) add("l_count", static_cast<double>(*r.local_max_count));
            if (r.grid_size) add("grid_size", static_cast<double>(*r.grid_size));
            if (r.b_event) add("b_event", *r.b_event ? 1.0 : 0.0);
            if (r.grid_is_cds) add("grid_is_cds", *r.grid_is_cds ? 1.0 : 0.0);
            if (r.factor81) add("factor81", *r.factor81 ? 1.0 : 0.0);
            add("components", static_cast<double>(r.components));
            if (r.opt_size) add("opt_size", static_cast<double>(*r.opt_size));
            if (r.degree_tail_event) add("degree_tail_event", *r.degree_tail_event ? 1.0 : 0.0);
            if (r.wall_ms) add("wall_ms", *r.wall_ms);
        }
        out.failures += cs.failures;
        out.cells.push_back(std::move(cs));
    }
    return out;
}

SweepResult sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto schedule = cfg.schedule();

    struct Task {
        std::size_t n;
        double ell;
        std::size_t trial;
    };
    std::vector<Task> tasks;
    for (const auto& cell : schedule)
        for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({cell.n, cell.ell, t});

    SweepResult result;
    result.records.resize(tasks.size());
    parallel_for(tasks.size(), cfg.threads, [&](std::size_t i) {
        const Task& task = tasks[i];
        try {
            result.records[i] = run_trial(cfg, task.n, task.ell, task.trial);
        } catch (const std::exception& e) {
            TrialRecord failed;
            failed.n = task.n;
            failed.ell = task.ell;
            failed.k = cfg.k;
            failed.trial_index = task.trial;
            failed.seed = derive_trial_seed(cfg.master_seed, task.n, task.ell, task.trial);
            failed.error = e.what();
            result.records[i] = std::move(failed);
        }
    });
    result.summary = summarize(schedule, result.records, cfg.k);
    return result;
}

Lemma1SuiteReport run_lemma1_suite(std::size_t samples, double ell, double pitch, std::uint64_t seed) {
    require(samples >= 1, "samples: must be >= 1");
    require(pitch > 0.0, "pitch: must be > 0");
    const SquareRegion q(ell);
    constexpr double kSlack = 1e-12;
    Rng rng(seed);
    Lemma1SuiteReport report;
    report.samples = samples;
    for (std::size_t i = 0; i < samples; ++i) {
        const Point p{rng.uniform01() * ell, rng.uniform01() * ell};
        const Lemma1Construction c = lemma1_points(p, q);
        const double limit = 1.0 - 2.0 * c.delta + kSlack;
        if (distance(c.z[0], c.z[1]) > limit || distance(c.z[1], c.z[2]) > limit) ++report.distance_violations;
        if (!std::all_of(c.z.begin(), c.z.end(), [&](Point z) { return q.contains(z); })) ++report.outside_square;
        if (!coverage_check(p, q, c.z, c.rho, pitch)) ++report.coverage_failures;
    }
    return report;
}

double km_curve(double m) { return 1.0 - 4.0 * std::pow(kCoverAlpha, m); }

KmEstimate estimate_km(unsigned k, std::size_t m, Point p, double ell, std::size_t trials,
                       std::uint64_t seed, KmMode mode, double pitch) {
    require(k >= 3, "k: the covering construction needs k >= 3");
    require(m >= k, "m: need m >= k sample points");
    require(trials >= 1, "trials: must be >= 1");
    require(pitch > 0.0, "pitch: must be > 0");
    const SquareRegion q(ell);
    const Lemma1Construction cons = lemma1_points(p, q);
    const double x0 = std::max(0.0, p.x - 1.0), x1 = std::min(ell, p.x + 1.0);
    const double y0 = std::max(0.0, p.y - 1.0), y1 = std::min(ell, p.y + 1.0);
    const double delta_sq = cons.delta * cons.delta;
    const double rho_sq = cons.rho * cons.rho;

    RunningStats hits;
    std::vector<Point> samples(m);
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_trial_seed(seed, m, ell, t));
        std::array<std::size_t, 3> first_hit{m, m, m};
        std::size_t near_last = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const Point s = sample_in_local_disk(rng, p, x0, x1, y0, y1);
            samples[j] = s;
            for (std::size_t c = 0; c < 3; ++c)
                if (first_hit[c] == m && squared_distance(s, cons.z[c]) <= delta_sq) first_hit[c] = j;
            if (squared_distance(s, cons.z[2]) <= rho_sq) ++near_last;
        }
        bool witnessed = near_last >= k &&
                         std::all_of(first_hit.begin(), first_hit.end(), [m](std::size_t h) { return h < m; });

        if (witnessed && mode == KmMode::Grid) {
            std::vector<std::size_t> chosen(first_hit.begin(), first_hit.end());
            std::sort(chosen.begin(), chosen.end());
            chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
            for (std::size_t j = 0; j < m && chosen.size() < k; ++j) {
                if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
                if (squared_distance(samples[j], cons.z[2]) <= rho_sq) chosen.push_back(j);
            }
            std::vector<Point> witness;
            for (std::size_t j : chosen) witness.push_back(samples[j]);
            witnessed = witness.size() == k && witness_connected(witness) &&
                        coverage_check(p, q, witness, 1.0, pitch);
        }
        hits.add(witnessed ? 1.0 : 0.0);
    }

    KmEstimate est;
    est.trials = trials;
    est.frequency = hits.mean();
    est.witnessed = static_cast<std::size_t>(std::llround(est.frequency * static_cast<double>(trials)));
    est.se = hits.se();
    est.curve = km_curve(static_cast<double>(m));
    est.bound = std::max(0.0, est.curve);
    return est;
}

DegreeTailEstimate degree_tail_check(std::size_t n, double ell, VertexId i, std::size_t trials,
                                     std::uint64_t seed) {
    require(n >= 1, "n: must be >= 1");
    if (i < 1 || i > n) {
        std::ostringstream msg;
        msg << "i: " << i << " outside 1.." << n;
        throw std::out_of_range(msg.str());
    }
    require(trials >= 1, "trials: must be >= 1");

    DegreeTailEstimate est;
    est.trials = trials;
    est.threshold = static_cast<double>(n - i) * std::numbers::pi / (8.0 * ell * ell);
    est.bound = std::exp(-static_cast<double>(n - i) * std::numbers::pi / (32.0 * ell * ell));

    RunningStats events;
    for (std::size_t t = 0; t < trials; ++t) {
        const Instance inst = generate_instance(n, ell, derive_trial_seed(seed, n, ell, t));
        const Point xi = inst.points[i - 1];
        std::size_t rho = 0;
        for (std::size_t j = i; j < n; ++j) rho += within_unit(xi, inst.points[j]) ? 1 : 0;
        events.add(static_cast<double>(rho) < est.threshold ? 1.0 : 0.0);
    }
    est.frequency = events.mean();
    est.events = static_cast<std::size_t>(std::llround(est.frequency * static_cast<double>(trials)));
    est.se = events.se();
    return est;
}

TheoreticalCurves theoretical_curves(std::size_t n, double ell, unsigned k) {
    if (n < 1) throw std::domain_error("n: must be >= 1");
    if (!(ell > std::sqrt(std::numbers::pi))) throw std::domain_error("ell: curves need ell > sqrt(pi)");
    const double side_sq = ell * ell;
    const auto nn = static_cast<double>(n);

    TheoreticalCurves c;
    c.l_lower_bound = side_sq / std::numbers::pi * (1.0 - std::pow(1.0 - std::numbers::pi / side_sq, nn));
    c.quarter_side_sq = side_sq / 4.0;
    c.marking_tail = nn * std::exp(-nn / side_sq);
    c.degree_tail_bound = std::exp(-(nn - 1.0) * std::numbers::pi / (32.0 * side_sq));
    c.km_m = (nn - 1.0) * std::numbers::pi / (8.0 * side_sq);
    c.km_bound = c.km_m < static_cast<double>(k) ? 0.0 : std::max(0.0, km_curve(c.km_m));
    return c;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace rulek
