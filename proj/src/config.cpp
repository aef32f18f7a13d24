#include "spectral_lab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spectral_lab/core.hpp"

namespace slab {

const char* param_type_name(ParamType t) {
    switch (t) {
        case ParamType::integer: return "integer";
        case ParamType::number: return "number";
        case ParamType::boolean: return "boolean";
        case ParamType::string: return "string";
        case ParamType::integer_list: return "integer-list";
        case ParamType::number_list: return "number-list";
    }
    return "unknown";
}

const ParamSpec* Schema::find(const std::string& key) const {
    for (const auto& p : params)
        if (p.key == key) return &p;
    return nullptr;
}

Json Schema::defaults() const {
    Json j = Json::object();
    for (const auto& p : params) j[p.key] = p.default_value;
    return j;
}

Json Schema::summary() const {
    Json j = Json::object();
    for (const auto& p : params) {
        Json e = {{"type", param_type_name(p.type)}, {"default", p.default_value}};
        if (p.type != ParamType::boolean && p.type != ParamType::string) {
            if (p.min > -1e300) e["min"] = p.min;
            if (p.max < 1e300) e["max"] = p.max;
        }
        if (!p.choices.empty()) e["choices"] = p.choices;
        if (!p.help.empty()) e["help"] = p.help;
        j[p.key] = e;
    }
    return j;
}

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& msg) {
    throw Error(Errc::config, "parameter '" + key + "': " + msg);
}

void check_number(const ParamSpec& p, const Json& v, bool integral) {
    if (integral) {
        if (!v.is_number_integer()) {
            if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) return check_number(p, Json(v.get<long long>()), true);
            fail(p.key, "expected an integer");
        }
    } else if (!v.is_number()) {
        fail(p.key, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(p.key, "must be finite");
    if (x < p.min || x > p.max) {
        std::ostringstream os;
        os << "value " << x << " outside [" << p.min << ", " << p.max << "]";
        fail(p.key, os.str());
    }
}

Json normalize(const ParamSpec& p, const Json& v) {
    switch (p.type) {
        case ParamType::integer:
            check_number(p, v, true);
            // seeds may exceed the signed range
            if (v.is_number_unsigned()) return v;
            return Json(v.get<long long>());
        case ParamType::number:
            check_number(p, v, false);
            return Json(v.get<double>());
        case ParamType::boolean:
            if (!v.is_boolean()) fail(p.key, "expected true or false");
            return v;
        case ParamType::string: {
            if (!v.is_string()) fail(p.key, "expected a string");
            if (!p.choices.empty()) {
                bool ok = false;
                for (const auto& c : p.choices) ok = ok || c == v.get<std::string>();
                if (!ok) fail(p.key, "unknown choice '" + v.get<std::string>() + "'");
            }
            return v;
        }
        case ParamType::integer_list:
        case ParamType::number_list: {
            if (!v.is_array() || v.empty()) fail(p.key, "expected a non-empty list");
            Json out = Json::array();
            const bool integral = p.type == ParamType::integer_list;
            for (const auto& e : v) {
                check_number(p, e, integral);
                out.push_back(integral ? Json(e.get<long long>()) : Json(e.get<double>()));
            }
            return out;
        }
    }
    return v;
}

}  // namespace

Json validate_config(const Schema& schema, const Json& cfg) {
    if (!cfg.is_object()) throw Error(Errc::config, "configuration must be a JSON object");
    Json out = schema.defaults();
    for (const auto& [key, value] : cfg.items()) {
        if (key == "scenario") continue;
        const ParamSpec* p = schema.find(key);
        if (!p) throw Error(Errc::config, "unknown parameter '" + key + "'");
        out[key] = normalize(*p, value);
    }
    for (const auto& p : schema.params) out[p.key] = normalize(p, out[p.key]);
    return out;
}

std::pair<std::string, Json> parse_override(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(Errc::config, "override must look like KEY=VALUE: " + kv);
    const std::string key = kv.substr(0, eq), text = kv.substr(eq + 1);
    Json v = Json::parse(text, nullptr, false);
    if (v.is_discarded()) v = text;
    return {key, v};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::config, "cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Json j = Json::parse(ss.str(), nullptr, false);
    if (j.is_discarded()) throw Error(Errc::config, "config file is not valid JSON: " + path);
    return j;
}

}  // namespace slab
