#include "rulek/cli.hpp"

#include <functional>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "rulek/experiments.hpp"
#include "rulek/io.hpp"
#include "rulek/oracle.hpp"
#include "rulek/rules.hpp"

namespace rulek::cli {

namespace {

void print(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::optional<std::filesystem::path> as_path(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::filesystem::path(s);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rule k connected dominating sets on random unit disk graphs"};
    app.require_subcommand(1);

    std::function<void()> action;

    // gen
    std::size_t gen_n = 0;
    double gen_ell = 0.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a uniform random instance");
    gen->add_option("--n", gen_n, "Number of points")->required();
    gen->add_option("--ell", gen_ell, "Square side (> 1)")->required();
    gen->add_option("--seed", gen_seed, "Seed")->required();
    gen->add_option("--out", gen_out, "Output instance file (stdout when omitted)");
    gen->callback([&] {
        action = [&] {
            const Instance inst = generate_instance(gen_n, gen_ell, gen_seed);
            if (auto path = as_path(gen_out))
                write_instance(inst, *path);
            else
                out << instance_to_json(inst).dump() << '\n';
        };
    });

    // rulek
    std::string rk_in;
    unsigned rk_k = 3;
    bool rk_at_most = false;
    std::string rk_restrict;
    std::uint64_t rk_cap = RuleKOptions{}.work_cap;
    auto* rk = app.add_subcommand("rulek", "Run Rule k on an instance");
    rk->add_option("--in", rk_in, "Instance file")->required();
    rk->add_option("--k", rk_k, "Witness set size k")->required();
    rk->add_flag("--at-most-k", rk_at_most, "Accept covering sets of 1..k vertices");
    rk->add_option("--restrict", rk_restrict, "Restrict to a candidate set")->check(CLI::IsMember({"marked"}));
    rk->add_option("--work-cap", rk_cap, "Search nodes allowed per vertex");
    rk->callback([&] {
        action = [&] {
            const UnitDiskGraph g = build_graph(read_instance(rk_in));
            const RuleKOptions opts{rk_at_most, rk_cap};
            CdsResult r = rk_restrict.empty() ? rule_k(g, rk_k, opts)
                                              : rule_k_restricted(g, rk_k, marking_process(g), opts);
            Json j = to_json(r);
            j["k"] = rk_k;
            j["at_most_k"] = rk_at_most;
            j["restricted_to_marked"] = !rk_restrict.empty();
            print(out, j);
        };
    });

    // mark
    std::string mark_in;
    auto* mark = app.add_subcommand("mark", "Marking Process");
    mark->add_option("--in", mark_in, "Instance file")->required();
    mark->callback([&] {
        action = [&] {
            const UnitDiskGraph g = build_graph(read_instance(mark_in));
            const VertexSet m = marking_process(g);
            print(out, Json{{"m", m.size()}, {"n", g.size()}, {"members", m}});
        };
    });

    // grid
    std::string grid_in;
    std::uint64_t grid_seed = 0;
    auto* grid = app.add_subcommand("grid", "Grid-partition CDS construction");
    grid->add_option("--in", grid_in, "Instance file")->required();
    grid->add_option("--seed", grid_seed, "Seed for the per-cell choice")->required();
    grid->callback([&] {
        action = [&] {
            const UnitDiskGraph g = build_graph(read_instance(grid_in));
            Rng rng(grid_seed);
            const GridCdsResult r = grid_cds(g, rng);
            Json j = to_json(r);
            j["is_cds"] = is_cds(g, r.members);
            j["factor81"] = factor81_check(g, r);
            print(out, j);
        };
    });

    // localmax
    std::string lm_in;
    auto* lm = app.add_subcommand("localmax", "Vertices with the highest ID in their neighborhood");
    lm->add_option("--in", lm_in, "Instance file")->required();
    lm->callback([&] {
        action = [&] {
            const UnitDiskGraph g = build_graph(read_instance(lm_in));
            const VertexSet l = local_maxima(g);
            print(out, Json{{"l", l.size()}, {"members", l}});
        };
    });

    // oracle
    std::string or_in;
    std::uint64_t or_seed = 0;
    std::size_t or_cap = kDefaultOracleCap;
    auto* orc = app.add_subcommand("oracle", "Exhaustive minimum CDS for small instances");
    orc->add_option("--in", or_in, "Instance file")->required();
    orc->add_option("--seed", or_seed, "Seed for the grid construction used in the bound");
    orc->add_option("--cap", or_cap, "Largest n accepted")->check(CLI::Range(1, 30));
    orc->callback([&] {
        action = [&] {
            const UnitDiskGraph g = build_graph(read_instance(or_in));
            Rng rng(or_seed);
            const GridCdsResult gr = grid_cds(g, rng);
            const OptResult opt = min_cds_bruteforce(g, &gr, or_cap);
            Json j = to_json(opt);
            j["bounds"] = to_json(opt_bounds(g, gr, opt));
            print(out, j);
        };
    });

    // km
    unsigned km_k = 3;
    std::size_t km_m = 0;
    std::size_t km_trials = 0;
    double km_ell = 0.0;
    std::uint64_t km_seed = 0;
    std::string km_mode = "sufficient";
    double km_pitch = 0.01;
    std::optional<double> km_px;
    std::optional<double> km_py;
    auto* km = app.add_subcommand("km", "Estimate the local covering event probability");
    km->add_option("--k", km_k, "k (>= 3)")->required();
    km->add_option("--m", km_m, "Points sampled per trial")->required();
    km->add_option("--trials", km_trials, "Trials")->required();
    km->add_option("--ell", km_ell, "Square side")->required();
    km->add_option("--seed", km_seed, "Seed")->required();
    km->add_option("--mode", km_mode, "sufficient or grid")->check(CLI::IsMember({"sufficient", "grid"}));
    km->add_option("--pitch", km_pitch, "Grid pitch for coverage certification");
    km->add_option("--px", km_px, "Center x (default ell/2)");
    km->add_option("--py", km_py, "Center y (default ell/2)");
    km->callback([&] {
        action = [&] {
            const Point p{km_px.value_or(km_ell / 2.0), km_py.value_or(km_ell / 2.0)};
            const KmMode mode = km_mode == "grid" ? KmMode::Grid : KmMode::Sufficient;
            Json j = to_json(estimate_km(km_k, km_m, p, km_ell, km_trials, km_seed, mode, km_pitch));
            j["k"] = km_k;
            j["m"] = km_m;
            j["mode"] = km_mode;
            print(out, j);
        };
    });

    // lemma1
    std::size_t l1_samples = 10000;
    double l1_ell = 5.0;
    double l1_pitch = 0.005;
    std::uint64_t l1_seed = 1;
    auto* l1 = app.add_subcommand("lemma1", "Check the three-point covering construction");
    l1->add_option("--samples", l1_samples, "Random centers")->required();
    l1->add_option("--ell", l1_ell, "Square side")->required();
    l1->add_option("--pitch", l1_pitch, "Coverage grid pitch")->required();
    l1->add_option("--seed", l1_seed, "Seed");
    bool l1_failed = false;
    l1->callback([&] {
        action = [&] {
            const Lemma1SuiteReport r = run_lemma1_suite(l1_samples, l1_ell, l1_pitch, l1_seed);
            print(out, Json{{"samples", r.samples},
                            {"distance_violations", r.distance_violations},
                            {"coverage_failures", r.coverage_failures},
                            {"outside_square", r.outside_square},
                            {"passed", r.passed()}});
            l1_failed = !r.passed();
        };
    });

    // degtail
    std::size_t dt_n = 0;
    double dt_ell = 0.0;
    VertexId dt_i = 1;
    std::size_t dt_trials = 0;
    std::uint64_t dt_seed = 0;
    auto* dt = app.add_subcommand("degtail", "Higher-ID degree lower-tail frequency");
    dt->add_option("--n", dt_n, "Number of points")->required();
    dt->add_option("--ell", dt_ell, "Square side")->required();
    dt->add_option("--i", dt_i, "Vertex ID")->required();
    dt->add_option("--trials", dt_trials, "Trials")->required();
    dt->add_option("--seed", dt_seed, "Seed")->required();
    dt->callback([&] {
        action = [&] { print(out, to_json(degree_tail_check(dt_n, dt_ell, dt_i, dt_trials, dt_seed))); };
    });

    // sweep
    std::string sw_config;
    std::string sw_out;
    auto* sw = app.add_subcommand("sweep", "Run a Monte Carlo sweep from a config file");
    sw->add_option("--config", sw_config, "Config JSON")->required();
    sw->add_option("--out-dir", sw_out, "Directory for results.csv and summary.json")->required();
    sw->callback([&] {
        action = [&] {
            const SweepResult r = sweep(read_config(sw_config));
            write_sweep_outputs(r, sw_out);
            print(out, Json{{"records", r.records.size()}, {"failures", r.summary.failures}, {"out_dir", sw_out}});
        };
    });

    // verify
    std::string vf_in;
    std::string vf_set;
    auto* vf = app.add_subcommand("verify", "Check whether a vertex set is a CDS");
    vf->add_option("--in", vf_in, "Instance file")->required();
    vf->add_option("--set", vf_set, "Set file: JSON ID array or {\"members\": [...]}")->required();
    vf->callback([&] {
        action = [&] {
            const UnitDiskGraph g = build_graph(read_instance(vf_in));
            const VertexSet s = read_vertex_set(vf_set);
            print(out, Json{{"size", s.size()},
                            {"is_dominating", is_dominating(g, s)},
                            {"is_cds", is_cds(g, s)},
                            {"subset_components", component_count(g, s)},
                            {"graph_components", component_count(g)}});
        };
    });

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (action) action();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return l1_failed ? kExitValidation : kExitOk;
}

}  // namespace rulek::cli
