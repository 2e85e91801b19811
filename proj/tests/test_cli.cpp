#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rulek/cli.hpp"
#include "rulek/io.hpp"

using namespace rulek;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    [[nodiscard]] Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "rulek_sim");
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "rulek_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string path_of(const std::string& name) { return (scratch_dir() / name).string(); }

std::string make_instance(const std::string& name, int n, double ell, int seed) {
    const auto path = path_of(name);
    REQUIRE(run({"gen", "--n", std::to_string(n), "--ell", std::to_string(ell), "--seed", std::to_string(seed),
                 "--out", path})
                .code == 0);
    return path;
}

}  // namespace

TEST_CASE("gen then rulek on three points keeps every vertex") {
    const auto inst = make_instance("three.json", 3, 10, 7);
    const auto r = run({"rulek", "--in", inst, "--k", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.json().at("c_k_size") == 3);
    CHECK(r.json().at("verified_dominating") == true);
}

TEST_CASE("gen writes to stdout without --out") {
    const auto r = run({"gen", "--n", "4", "--ell", "2", "--seed", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.json().at("points").size() == 4);
}

TEST_CASE("verify accepts the full vertex set") {
    const auto inst = make_instance("verify.json", 40, 3, 2);
    std::ofstream(path_of("all.json")) << [] {
        Json ids = Json::array();
        for (int i = 1; i <= 40; ++i) ids.push_back(i);
        return ids.dump();
    }();
    const auto r = run({"verify", "--in", inst, "--set", path_of("all.json")});
    REQUIRE(r.code == 0);
    CHECK(r.json().at("is_cds") == true);

    std::ofstream(path_of("none.json")) << "[1]";
    const auto one = run({"verify", "--in", inst, "--set", path_of("none.json")});
    CHECK(one.code == 0);
    CHECK(one.json().at("size") == 1);
}

TEST_CASE("rulek output feeds back into verify") {
    const auto inst = make_instance("feed.json", 150, 5, 9);
    const auto r = run({"rulek", "--in", inst, "--k", "2", "--restrict", "marked"});
    REQUIRE(r.code == 0);
    std::ofstream(path_of("feed_set.json")) << r.out;
    const auto v = run({"verify", "--in", inst, "--set", path_of("feed_set.json")});
    REQUIRE(v.code == 0);
    CHECK(v.json().at("size") == r.json().at("c_k_size"));
}

TEST_CASE("oracle refuses instances above the cap") {
    const auto big = make_instance("big.json", 20, 3, 1);
    const auto r = run({"oracle", "--in", big});
    CHECK(r.code == cli::kExitValidation);
    CHECK(r.err.find("16") != std::string::npos);

    const auto small = make_instance("small.json", 8, 2, 1);
    const auto ok = run({"oracle", "--in", small, "--seed", "3"});
    REQUIRE(ok.code == 0);
    CHECK(ok.json().at("opt_size") >= 1);
    CHECK(ok.json().at("bounds").contains("bound_holds"));
}

TEST_CASE("argument errors exit with the validation status") {
    CHECK(run({"rulek", "--bogus"}).code == cli::kExitValidation);
    CHECK(run({}).code == cli::kExitValidation);
    CHECK(run({"gen", "--n", "3", "--ell", "0.5", "--seed", "1"}).code == cli::kExitValidation);
    CHECK(run({"km", "--k", "3", "--m", "2", "--trials", "3", "--ell", "10", "--seed", "1"}).code ==
          cli::kExitValidation);
    CHECK(run({"degtail", "--n", "5", "--ell", "3", "--i", "6", "--trials", "3", "--seed", "1"}).code ==
          cli::kExitValidation);
    const auto missing = run({"rulek", "--in", path_of("does_not_exist.json"), "--k", "3"});
    CHECK(missing.code == cli::kExitInternal);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("work cap surfaces as an internal error") {
    const auto inst = make_instance("dense.json", 60, 1.5, 3);
    const auto r = run({"rulek", "--in", inst, "--k", "3", "--work-cap", "1"});
    CHECK(r.code == cli::kExitInternal);
    CHECK(r.err.find("vertex") != std::string::npos);
}

TEST_CASE("remaining subcommands") {
    const auto inst = make_instance("misc.json", 120, 4, 5);
    const auto mark = run({"mark", "--in", inst});
    REQUIRE(mark.code == 0);
    CHECK(mark.json().at("n") == 120);

    const auto lm = run({"localmax", "--in", inst});
    REQUIRE(lm.code == 0);
    CHECK(lm.json().at("l") >= 1);

    const auto grid = run({"grid", "--in", inst, "--seed", "4"});
    REQUIRE(grid.code == 0);
    CHECK(grid.json().at("cells_per_side") == 12);

    const auto km = run({"km", "--k", "3", "--m", "500", "--trials", "20", "--ell", "10", "--seed", "2", "--mode",
                         "grid", "--px", "0", "--py", "0"});
    REQUIRE(km.code == 0);
    CHECK(km.json().at("trials") == 20);

    const auto l1 = run({"lemma1", "--samples", "50", "--ell", "5", "--pitch", "0.01"});
    REQUIRE(l1.code == 0);
    CHECK(l1.json().at("passed") == true);

    const auto dt = run({"degtail", "--n", "200", "--ell", "5", "--i", "1", "--trials", "30", "--seed", "2"});
    REQUIRE(dt.code == 0);
    CHECK(dt.json().at("bound") <= 1.0);
}

TEST_CASE("sweep subcommand") {
    std::ofstream(path_of("cfg.json")) << R"({"trials": 2, "master_seed": 1,
        "schedule": [{"n": 25, "ell": 2.5}], "threads": 1})";
    const auto out_dir = path_of("sweep_out");
    const auto r = run({"sweep", "--config", path_of("cfg.json"), "--out-dir", out_dir});
    REQUIRE(r.code == 0);
    CHECK(r.json().at("records") == 2);
    CHECK(std::filesystem::exists(std::filesystem::path(out_dir) / "results.csv"));

    std::ofstream(path_of("bad_cfg.json")) << R"({"schedule": [{"n": 25, "ell": 2.5}], "oops": 1})";
    const auto bad = run({"sweep", "--config", path_of("bad_cfg.json"), "--out-dir", out_dir});
    CHECK(bad.code == cli::kExitValidation);
    CHECK(bad.err.find("oops") != std::string::npos);
}
