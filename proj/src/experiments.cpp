#include "spectral_lab/experiments.hpp"

#include <chrono>
#include <sstream>

#include "spectral_lab/core.hpp"
#include "spectral_lab/rng.hpp"
#include "spectral_lab/version.hpp"

namespace slab {

ParamSpec seed_param() {
    ParamSpec p;
    p.key = "seed";
    p.type = ParamType::integer;
    p.default_value = kDefaultSeed;
    p.min = 0.0;
    p.max = 18446744073709551615.0;
    p.help = "master seed";
    return p;
}

ParamSpec int_param(std::string key, long long def, double lo, double hi, std::string help) {
    return {std::move(key), ParamType::integer, Json(def), lo, hi, {}, std::move(help)};
}

ParamSpec num_param(std::string key, double def, double lo, double hi, std::string help) {
    return {std::move(key), ParamType::number, Json(def), lo, hi, {}, std::move(help)};
}

ParamSpec bool_param(std::string key, bool def, std::string help) {
    return {std::move(key), ParamType::boolean, Json(def), -1e300, 1e300, {}, std::move(help)};
}

ParamSpec str_param(std::string key, std::string def, std::vector<std::string> choices, std::string help) {
    return {std::move(key), ParamType::string, Json(def), -1e300, 1e300, std::move(choices), std::move(help)};
}

ParamSpec nums_param(std::string key, std::vector<double> def, double lo, double hi, std::string help) {
    return {std::move(key), ParamType::number_list, Json(def), lo, hi, {}, std::move(help)};
}

ParamSpec ints_param(std::string key, std::vector<long long> def, double lo, double hi, std::string help) {
    return {std::move(key), ParamType::integer_list, Json(def), lo, hi, {}, std::move(help)};
}

std::uint64_t param_seed(const Json& p) { return p.at("seed").get<std::uint64_t>(); }

std::vector<double> param_nums(const Json& p, const std::string& key) {
    std::vector<double> v;
    for (const auto& e : p.at(key)) v.push_back(e.get<double>());
    return v;
}

const std::vector<Scenario>& scenario_registry() {
    static const std::vector<Scenario> reg = [] {
        std::vector<Scenario> r;
        register_harmonic_scenarios(r);
        register_random_scenarios(r);
        register_spectral_scenarios(r);
        return r;
    }();
    return reg;
}

const Scenario* find_scenario(const std::string& id) {
    for (const auto& s : scenario_registry())
        if (s.id == id) return &s;
    return nullptr;
}

std::vector<std::string> scenario_ids() {
    std::vector<std::string> ids;
    for (const auto& s : scenario_registry()) ids.push_back(s.id);
    return ids;
}

Json scenario_listing() {
    Json arr = Json::array();
    for (const auto& s : scenario_registry())
        arr.push_back({{"id", s.id}, {"description", s.description}, {"parameters", s.schema.summary()}});
    return arr;
}

std::string scenario_listing_text() {
    std::ostringstream os;
    for (const auto& s : scenario_registry()) {
        os << s.id << "\n    " << s.description << "\n    parameters:";
        for (const auto& p : s.schema.params) os << ' ' << p.key << ':' << param_type_name(p.type);
        os << "\n";
    }
    return os.str();
}

Json scenario_params(const std::string& id, const Json& overrides) {
    const Scenario* s = find_scenario(id);
    if (!s) throw Error(Errc::config, "unknown scenario '" + id + "'");
    return validate_config(s->schema, overrides);
}

RunRecord run_scenario(const Scenario& s, const Json& params, const std::string& out_dir, const Json& invocation) {
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.output = s.run(params);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string dir = out_dir + "/" + s.id + "/";
    Json files = Json::array();
    for (const auto& t : rec.output.tables) {
        const std::string path = dir + t.name + ".csv";
        write_file_atomic(path, t.to_csv());
        rec.files.push_back(path);
        files.push_back(t.name + ".csv");
    }
    for (const auto& [name, body] : rec.output.files) {
        write_file_atomic(dir + name, body);
        rec.files.push_back(dir + name);
        files.push_back(name);
    }
    Json meta;
    meta["scenario"] = s.id;
    meta["version"] = kVersion;
    meta["seed"] = param_seed(params);
    meta["config"] = params;
    meta["invocation"] = invocation;
    meta["grid"] = rec.output.grid;
    meta["files"] = files;
    meta["summary"] = rec.output.summary;
    meta["wall_time_s"] = wall;
    rec.metadata = meta;
    write_file_atomic(dir + "metadata.json", meta.dump(2) + "\n");
    rec.files.push_back(dir + "metadata.json");
    return rec;
}

}  // namespace slab
