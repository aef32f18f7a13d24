#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"

#ifndef SLAB_CLI_PATH
#error "SLAB_CLI_PATH must point at the command-line binary"
#endif

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Result {
    int code = -1;
    std::string out, err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("slab_test_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

// Runs the binary through the shell with a clean seed variable unless one is given.
Result run(const std::string& args, const std::string& env = "") {
    const fs::path errf = fs::temp_directory_path() / "slab_test_cli_stderr.txt";
    const std::string cmd = "env -u SPECTRAL_LAB_SEED " + env + " '" SLAB_CLI_PATH "' " + args + " 2>'" + errf.string() + "'";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(errf);
    return r;
}

Json metadata(const fs::path& out, const std::string& id) { return Json::parse(slurp(out / id / "metadata.json")); }

}  // namespace

TEST_CASE("list") {
    const Result r = run("list");
    CHECK(r.code == 0);
    CHECK(r.out.find("knapp-saturation") != std::string::npos);
    const Result j = run("list --json");
    REQUIRE(j.code == 0);
    const Json listing = Json::parse(j.out);
    CHECK(listing.is_array());
    CHECK(listing.size() == 16);
    std::size_t described = 0;
    for (const auto& s : listing) {
        CHECK(r.out.find(s["id"].get<std::string>()) != std::string::npos);
        described += s.contains("parameters") && s.contains("description");
    }
    CHECK(described == listing.size());
}

TEST_CASE("run writes CSV and metadata") {
    const fs::path out = scratch("run");
    const Result r = run("run geom-series --out '" + out.string() + "'");
    CHECK(r.code == 0);
    CHECK(fs::exists(out / "geom-series" / "geom_series.csv"));
    CHECK(fs::exists(out / "geom-series" / "metadata.json"));
    CHECK(r.out.find("metadata.json") != std::string::npos);
    CHECK(slurp(out / "geom-series" / "geom_series.csv").rfind("A,brute_force,bound,ratio\n", 0) == 0);
    const Json m = metadata(out, "geom-series");
    CHECK(m["seed"] == 0x5EED);
    CHECK(m["scenario"] == "geom-series");
    // no stray temp files
    int entries = 0;
    for (const auto& e : fs::recursive_directory_iterator(out)) entries += e.is_regular_file();
    CHECK(entries == 2);
    fs::remove_all(out);
}

TEST_CASE("config file and overrides are applied and echoed") {
    const fs::path out = scratch("cfg");
    std::ofstream(out / "cfg.json") << R"({"scenario": "max-scaling", "n_trials": 40, "N_list": [10, 100, 1000]})";
    const Result r = run("run max-scaling --config '" + (out / "cfg.json").string() + "' --set n_trials=50 --set seed=7 --out '" +
                         out.string() + "' --json");
    REQUIRE(r.code == 0);
    const Json printed = Json::parse(r.out);
    const Json m = metadata(out, "max-scaling");
    CHECK(printed == m);
    CHECK(m["config"]["n_trials"] == 50);
    CHECK(m["config"]["N_list"] == Json({10, 100, 1000}));
    CHECK(m["seed"] == 7);
    CHECK(m["invocation"]["overrides"] == Json({"n_trials=50", "seed=7"}));
    fs::remove_all(out);
}

TEST_CASE("seed precedence: flag over environment over default") {
    const fs::path out = scratch("seed");
    const std::string base = "run max-scaling --set n_trials=20 --out '" + out.string() + "'";
    REQUIRE(run(base).code == 0);
    CHECK(metadata(out, "max-scaling")["seed"] == 0x5EED);
    REQUIRE(run(base, "SPECTRAL_LAB_SEED=11").code == 0);
    CHECK(metadata(out, "max-scaling")["seed"] == 11);
    REQUIRE(run(base + " --seed 0x10", "SPECTRAL_LAB_SEED=11").code == 0);
    CHECK(metadata(out, "max-scaling")["seed"] == 16);
    CHECK(run(base, "SPECTRAL_LAB_SEED=abc").code == 2);
    CHECK(run(base + " --seed -3").code == 2);
    fs::remove_all(out);
}

TEST_CASE("identical invocations give byte-identical CSV") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    REQUIRE(run("run tail-decay --set n_samples=150 --out '" + a.string() + "' --threads 1").code == 0);
    REQUIRE(run("run tail-decay --set n_samples=150 --out '" + b.string() + "' --threads 2").code == 0);
    for (const auto* f : {"exceedance.csv", "exceedance_double.csv", "samples.csv"})
        CHECK(slurp(a / "tail-decay" / f) == slurp(b / "tail-decay" / f));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("config errors exit 2") {
    const fs::path out = scratch("err");
    const std::string o = " --out '" + out.string() + "'";
    const Result unknown = run("run no-such-scenario" + o);
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("knapp-saturation") != std::string::npos);
    CHECK(run("run knapp-saturation --set bogus=1" + o).code == 2);
    CHECK(run("run knapp-saturation --set n_mc=abc" + o).code == 2);
    CHECK(run("run knapp-saturation --set h=5" + o).code == 2);
    CHECK(run("run knapp-saturation --set R_list=[8,16]" + o).code == 2);
    CHECK(run("run knapp-saturation --config '" + (out / "missing.json").string() + "'" + o).code == 2);
    std::ofstream(out / "other.json") << R"({"scenario": "chaining"})";
    CHECK(run("run knapp-saturation --config '" + (out / "other.json").string() + "'" + o).code == 2);
    std::ofstream(out / "bad.json") << "[1, 2";
    CHECK(run("run geom-series --config '" + (out / "bad.json").string() + "'" + o).code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("").code == 2);
    // nothing was computed or written
    CHECK(!fs::exists(out / "knapp-saturation"));
    CHECK(!fs::exists(out / "geom-series"));
    fs::remove_all(out);
}

TEST_CASE("numerical failures exit 3") {
    const fs::path out = scratch("num");
    const Result r = run("run bsij-separation --set gaps=[30] --out '" + out.string() + "'");
    CHECK(r.code == 3);
    CHECK(r.err.find("box-too-small") != std::string::npos);
    const Result b = run("run born-criterion --set re_min=-0.5 --set re_max=-0.1 --set nx=5 --set ny=3 --set N=128 --out '" +
                         out.string() + "'");
    CHECK(b.code == 3);
    CHECK(b.err.find("no-convergence") != std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("help exits 0") {
    const Result r = run("--help");
    CHECK(r.code == 0);
    CHECK(r.out.find("run") != std::string::npos);
}
