#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spectral_lab/core.hpp"
#include "spectral_lab/experiments.hpp"
#include "spectral_lab/parallel.hpp"
#include "spectral_lab/rng.hpp"

namespace slab {

namespace {

std::uint64_t parse_seed(const std::string& s, const char* what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used, 0);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || s.front() == '-')
        throw Error(Errc::config, std::string("invalid ") + what + " '" + s + "'");
    return v;
}

std::string available() {
    std::string s;
    for (const auto& id : scenario_ids()) s += (s.empty() ? "" : ", ") + id;
    return s;
}

// Seed precedence: built-in default < SPECTRAL_LAB_SEED < config file and
// --set < --seed.
Json build_params(const Scenario& sc, const std::string& config_path, const std::vector<std::string>& sets,
                  const std::optional<std::string>& seed_flag) {
    Json cfg = Json::object();
    if (const char* env = std::getenv("SPECTRAL_LAB_SEED"); env && *env)
        cfg["seed"] = parse_seed(env, "SPECTRAL_LAB_SEED");
    if (!config_path.empty()) {
        const Json file = load_json_file(config_path);
        if (!file.is_object()) throw Error(Errc::config, "config must be a JSON object");
        if (file.contains("scenario") && file["scenario"] != sc.id)
            throw Error(Errc::config, "config is for scenario " + file["scenario"].dump() + ", not '" + sc.id + "'");
        for (const auto& [k, v] : file.items()) cfg[k] = v;
    }
    for (const auto& kv : sets) {
        auto [k, v] = parse_override(kv);
        cfg[k] = v;
    }
    if (seed_flag) cfg["seed"] = parse_seed(*seed_flag, "--seed");
    return validate_config(sc.schema, cfg);
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical lab for random Schrodinger operators with complex potentials", "spectral_lab"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: hardware count)");

    auto* run = app.add_subcommand("run", "run a scenario and write CSV + metadata.json");
    std::string scenario, config_path, out_dir = "results";
    std::vector<std::string> sets;
    std::string seed_text;
    bool run_json = false;
    run->add_option("scenario", scenario, "scenario id (see 'list')")->required();
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--set", sets, "override K=V (repeatable)")->allow_extra_args(false);
    run->add_option("--out", out_dir, "output directory")->capture_default_str();
    run->add_option("--seed", seed_text, "master seed (u64, decimal or 0x hex)");
    run->add_option("--threads", threads, "worker threads (default: hardware count)");
    run->add_flag("--json", run_json, "print the metadata record as JSON");

    auto* list = app.add_subcommand("list", "list scenarios and their parameters");
    bool list_json = false;
    list->add_flag("--json", list_json, "machine-readable listing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        const int rc = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (threads > 0) set_thread_count(threads);
        if (*list) {
            if (list_json)
                out << scenario_listing().dump(2) << "\n";
            else
                out << scenario_listing_text();
            return kExitOk;
        }
        const Scenario* sc = find_scenario(scenario);
        if (!sc) {
            err << "error: unknown scenario '" << scenario << "'\navailable scenarios: " << available() << "\n";
            return kExitConfig;
        }
        const std::optional<std::string> seed_flag =
            seed_text.empty() ? std::nullopt : std::optional<std::string>(seed_text);
        const Json params = build_params(*sc, config_path, sets, seed_flag);
        Json invocation = {{"config_path", config_path}, {"overrides", sets}, {"out", out_dir}};
        if (seed_flag) invocation["seed_flag"] = *seed_flag;
        const RunRecord rec = run_scenario(*sc, params, out_dir, invocation);
        if (run_json) {
            out << rec.metadata.dump(2) << "\n";
        } else {
            for (const auto& f : rec.files) out << f << "\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        if (e.code() == Errc::config) return kExitConfig;
        if (e.code() == Errc::io) return kExitFailure;
        return kExitNumerical;
    } catch (const Json::exception& e) {
        err << "error [config]: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace slab
