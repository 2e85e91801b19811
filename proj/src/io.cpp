#include "rulek/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace rulek {

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
    throw std::invalid_argument(field + ": " + what);
}

template <typename T>
T field_as(const Json& obj, const std::string& key, const std::string& path) {
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        invalid(path + key, "missing or wrong type");
    }
}

template <typename T>
void read_optional(const Json& obj, const std::string& key, const std::string& path, T& out) {
    if (obj.contains(key)) out = field_as<T>(obj, key, path);
}

void reject_unknown_keys(const Json& obj, const std::set<std::string>& known, const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.contains(key)) invalid(path + key, "unknown field");
    }
}

std::string csv_field(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); }
std::string csv_field(const std::optional<bool>& v) { return v ? (*v ? "1" : "0") : std::string(); }

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": malformed JSON (" + e.what() + ")");
    }
}

Instance instance_from_json(const Json& j) {
    if (!j.is_object()) invalid("instance", "expected a JSON object");
    reject_unknown_keys(j, {"side", "points"}, "");
    Instance inst;
    inst.side = field_as<double>(j, "side", "");
    const Json& pts = j.contains("points") ? j.at("points") : Json();
    if (!pts.is_array()) invalid("points", "expected an array of [x, y] pairs");
    inst.points.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Json& p = pts[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            invalid("points[" + std::to_string(i) + "]", "expected [x, y]");
        inst.points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    inst.validate();
    return inst;
}

Json instance_to_json(const Instance& inst) {
    Json pts = Json::array();
    for (const Point& p : inst.points) pts.push_back(Json::array({p.x, p.y}));
    return Json{{"side", inst.side}, {"points", std::move(pts)}};
}

Instance read_instance(const std::filesystem::path& path) { return instance_from_json(read_json_file(path)); }

void write_instance(const Instance& inst, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << instance_to_json(inst).dump() << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

VertexSet vertex_set_from_json(const Json& j) {
    const Json* list = &j;
    if (j.is_object()) {
        if (!j.contains("members")) invalid("members", "set object needs a \"members\" array");
        list = &j.at("members");
    }
    if (!list->is_array()) invalid("members", "expected an array of vertex IDs");
    VertexSet out;
    for (std::size_t i = 0; i < list->size(); ++i) {
        const Json& v = (*list)[i];
        if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0 || v.get<std::uint64_t>() > 0xffffffffULL)
            invalid("members[" + std::to_string(i) + "]", "expected a positive integer ID");
        out.push_back(v.get<VertexId>());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

VertexSet read_vertex_set(const std::filesystem::path& path) { return vertex_set_from_json(read_json_file(path)); }

Json to_json(const CdsResult& r) {
    return Json{{"members", r.members},
                {"c_k_size", r.size},
                {"u_k", r.excluded_count},
                {"verified_dominating", r.verified_dominating},
                {"verified_component_preserving", r.verified_component_preserving}};
}

Json to_json(const GridCdsResult& r) {
    return Json{{"members", r.members},
                {"size", r.members.size()},
                {"cells_per_side", r.cells_per_side},
                {"cell_side", r.cell_side},
                {"all_cells_occupied", r.all_cells_occupied}};
}

Json to_json(const OptResult& r) {
    return Json{{"opt_size", r.opt_size}, {"opt_witness", r.opt_witness}, {"grid_lower_bound", r.grid_lower_bound}};
}

Json to_json(const OptBoundsReport& r) {
    Json j{{"grid_size", r.grid_size}, {"grid_lower_bound", r.grid_lower_bound}};
    if (r.opt_size) {
        j["opt_size"] = *r.opt_size;
        j["bound_holds"] = *r.bound_holds;
        j["opt_below_tenth_ellsq"] = *r.below_tenth_side_sq;
    }
    return j;
}

Json to_json(const KmEstimate& r) {
    return Json{{"trials", r.trials}, {"witnessed", r.witnessed}, {"frequency", r.frequency},
                {"se", r.se},         {"curve", r.curve},         {"bound", r.bound}};
}

Json to_json(const DegreeTailEstimate& r) {
    return Json{{"trials", r.trials},       {"events", r.events}, {"threshold", r.threshold},
                {"frequency", r.frequency}, {"se", r.se},         {"bound", r.bound}};
}

Json to_json(const TheoreticalCurves& c) {
    return Json{{"l_bound", c.l_lower_bound},
                {"quarter_ellsq", c.quarter_side_sq},
                {"marking_tail", c.marking_tail},
                {"degree_tail_bound", c.degree_tail_bound},
                {"km_m", c.km_m},
                {"km_bound", c.km_bound}};
}

Json to_json(const SweepSummary& s) {
    Json cells = Json::array();
    for (const auto& cell : s.cells) {
        Json stats = Json::object();
        for (const auto& [name, st] : cell.stats)
            stats[name] = Json{{"mean", st.mean()}, {"sd", st.sd()}, {"se", st.se()}, {"count", st.count()}};
        cells.push_back(Json{{"n", cell.n},
                             {"ell", cell.ell},
                             {"trials", cell.trials},
                             {"failures", cell.failures},
                             {"stats", std::move(stats)},
                             {"curves", cell.curves ? to_json(*cell.curves) : Json::object()}});
    }
    return Json{{"cells", std::move(cells)}, {"failures", s.failures}};
}

ExperimentConfig config_from_json(const Json& j) {
    if (!j.is_object()) invalid("config", "expected a JSON object");
    reject_unknown_keys(j,
                        {"k", "trials", "master_seed", "schedule", "toggles", "at_most_k", "work_cap",
                         "oracle_cap", "threads", "record_timing"},
                        "");
    ExperimentConfig cfg;
    read_optional(j, "k", "", cfg.k);
    read_optional(j, "trials", "", cfg.trials);
    read_optional(j, "master_seed", "", cfg.master_seed);
    read_optional(j, "at_most_k", "", cfg.at_most_k);
    read_optional(j, "work_cap", "", cfg.work_cap);
    read_optional(j, "oracle_cap", "", cfg.oracle_cap);
    read_optional(j, "threads", "", cfg.threads);
    read_optional(j, "record_timing", "", cfg.record_timing);

    if (!j.contains("schedule")) invalid("schedule", "missing");
    const Json& sched = j.at("schedule");
    if (sched.is_array()) {
        for (std::size_t i = 0; i < sched.size(); ++i) {
            const std::string path = "schedule[" + std::to_string(i) + "].";
            if (!sched[i].is_object()) invalid(path, "expected {\"n\":..,\"ell\":..}");
            reject_unknown_keys(sched[i], {"n", "ell"}, path);
            cfg.cells.push_back({field_as<std::size_t>(sched[i], "n", path), field_as<double>(sched[i], "ell", path)});
        }
    } else if (sched.is_object()) {
        reject_unknown_keys(sched, {"family", "c", "a", "beta", "n"}, "schedule.");
        FamilyRule rule;
        const auto family = field_as<std::string>(sched, "family", "schedule.");
        if (family == "sqrt_n_over_log_n") {
            rule.kind = FamilyRule::Kind::SqrtNOverLogN;
            if (sched.contains("a") == sched.contains("c")) invalid("schedule.c", "give exactly one of c or a");
            if (sched.contains("a")) {
                const auto a = field_as<double>(sched, "a", "schedule.");
                if (!(a > 0.0)) invalid("schedule.a", "must be > 0");
                rule.c = 1.0 / std::sqrt(a);
            } else {
                rule.c = field_as<double>(sched, "c", "schedule.");
            }
        } else if (family == "power") {
            rule.kind = FamilyRule::Kind::Power;
            rule.c = field_as<double>(sched, "c", "schedule.");
            rule.beta = field_as<double>(sched, "beta", "schedule.");
        } else {
            invalid("schedule.family", "expected \"sqrt_n_over_log_n\" or \"power\"");
        }
        rule.n_values = field_as<std::vector<std::size_t>>(sched, "n", "schedule.");
        cfg.family = rule;
    } else {
        invalid("schedule", "expected an array of cells or a family object");
    }

    if (j.contains("toggles")) {
        const Json& t = j.at("toggles");
        if (!t.is_object()) invalid("toggles", "expected an object");
        reject_unknown_keys(t, {"rule_k", "marking", "local_maxima", "grid_cds", "oracle", "degree_tail"}, "toggles.");
        read_optional(t, "rule_k", "toggles.", cfg.toggles.rule_k);
        read_optional(t, "marking", "toggles.", cfg.toggles.marking);
        read_optional(t, "local_maxima", "toggles.", cfg.toggles.local_maxima);
        read_optional(t, "grid_cds", "toggles.", cfg.toggles.grid_cds);
        read_optional(t, "oracle", "toggles.", cfg.toggles.oracle);
        read_optional(t, "degree_tail", "toggles.", cfg.toggles.degree_tail);
    }
    cfg.validate();
    return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
    Json j{{"k", cfg.k}, {"trials", cfg.trials}, {"master_seed", cfg.master_seed}};
    if (cfg.family) {
        const FamilyRule& f = *cfg.family;
        if (f.kind == FamilyRule::Kind::SqrtNOverLogN)
            j["schedule"] = Json{{"family", "sqrt_n_over_log_n"}, {"c", f.c}, {"n", f.n_values}};
        else
            j["schedule"] = Json{{"family", "power"}, {"c", f.c}, {"beta", f.beta}, {"n", f.n_values}};
    } else {
        Json cells = Json::array();
        for (const auto& c : cfg.cells) cells.push_back(Json{{"n", c.n}, {"ell", c.ell}});
        j["schedule"] = std::move(cells);
    }
    j["toggles"] = Json{{"rule_k", cfg.toggles.rule_k},         {"marking", cfg.toggles.marking},
                        {"local_maxima", cfg.toggles.local_maxima}, {"grid_cds", cfg.toggles.grid_cds},
                        {"oracle", cfg.toggles.oracle},         {"degree_tail", cfg.toggles.degree_tail}};
    j["at_most_k"] = cfg.at_most_k;
    j["work_cap"] = cfg.work_cap;
    j["oracle_cap"] = cfg.oracle_cap;
    j["threads"] = cfg.threads;
    j["record_timing"] = cfg.record_timing;
    return j;
}

ExperimentConfig read_config(const std::filesystem::path& path) { return config_from_json(read_json_file(path)); }

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << kResultsCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.n << ',' << format_double(r.ell) << ',' << r.k << ',' << r.trial_index << ',' << r.seed << ','
            << csv_field(r.c_k) << ',' << csv_field(r.u_k) << ',' << csv_field(r.marking_size) << ','
            << csv_field(r.restricted_size) << ',' << csv_field(r.local_max_count) << ','
            << csv_field(r.grid_size) << ',' << csv_field(r.b_event) << ',';
        if (r.error.empty()) out << r.components;
        out << ',' << csv_field(r.is_cds) << ',' << csv_field(r.opt_size) << ','
            << (r.wall_ms ? format_double(*r.wall_ms) : std::string()) << '\n';
    }
}

void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    {
        auto csv = open_for_write(dir / "results.csv");
        write_records_csv(csv, result.records);
        if (!csv) throw IoError("failed writing results.csv");
    }

    Json summary = to_json(result.summary);
    Json errors = Json::array();
    for (const auto& r : result.records) {
        if (!r.error.empty())
            errors.push_back(Json{{"n", r.n}, {"ell", r.ell}, {"trial", r.trial_index}, {"error", r.error}});
    }
    summary["errors"] = std::move(errors);
    auto js = open_for_write(dir / "summary.json");
    js << summary.dump(2) << '\n';
    if (!js) throw IoError("failed writing summary.json");
}

}  // namespace rulek
