#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace slab {

using Json = nlohmann::ordered_json;

enum class ParamType { integer, number, boolean, string, integer_list, number_list };
const char* param_type_name(ParamType t);

struct ParamSpec {
    std::string key;
    ParamType type = ParamType::number;
    Json default_value;
    double min = -1e300;  // inclusive bounds on numbers and list elements
    double max = 1e300;
    std::vector<std::string> choices;  // strings only; empty = free
    std::string help;
};

struct Schema {
    std::vector<ParamSpec> params;
    const ParamSpec* find(const std::string& key) const;
    Json defaults() const;
    Json summary() const;  // key -> {type, default, min, max, choices}
};

// Merges cfg over the defaults, rejecting unknown keys, wrong types and
// out-of-range values with an Errc::config error. A "scenario" key is ignored.
Json validate_config(const Schema& schema, const Json& cfg);

// "K=V": V parsed as JSON when possible, otherwise kept as a string.
std::pair<std::string, Json> parse_override(const std::string& kv);

Json load_json_file(const std::string& path);

}  // namespace slab
