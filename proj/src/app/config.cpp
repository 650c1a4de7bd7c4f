#include "quantcast/app/config.hpp"

#include <fstream>
#include <initializer_list>

#include "quantcast/error.hpp"
#include "quantcast/neural/serialize.hpp"

namespace quantcast::app {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
    if (!j.is_object()) throw ParseError("config: " + where + " must be an object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ParseError("config: unknown key '" + key + "' in " + where);
    }
}

Date date_field(const json& j, const char* key, Date fallback) {
    if (!j.contains(key)) return fallback;
    const auto d = parse_date(j[key].get<std::string>());
    if (!d) throw ParseError(std::string("config: bad date in ") + key);
    return *d;
}

json without(json j, const char* key) {
    j.erase(key);
    return j;
}

}  // namespace

void AppConfig::validate() const {
    if (symbol.empty()) throw InvalidArgument("config: symbol is empty");
    if (!(start < end)) throw InvalidArgument("config: date_range start must precede end");
    if (arima.enabled && arima.policies.empty()) throw InvalidArgument("config: arima.policies is empty");
    if (arima.d < 0 || arima.d > 2 || arima.p_max < 0 || arima.q_max < 0) {
        throw InvalidArgument("config: arima orders out of range");
    }
    if (arima_garch_enabled && !arima.enabled) {
        throw InvalidArgument("config: arima_garch needs arima enabled to choose its window");
    }
    lstm.validate();
    mlp.validate();
    series::split_bounds(100, split);
}

json to_json(const AppConfig& c) {
    json policies = json::array();
    for (const auto& p : c.arima.policies) policies.push_back(walkforward::to_string(p));
    json lstm = neural::to_json(c.lstm);
    lstm.erase("seed");
    lstm["enabled"] = c.lstm_enabled;
    json mlp = neural::to_json(c.mlp);
    mlp.erase("seed");
    mlp["enabled"] = c.mlp_enabled;
    return {
        {"symbol", c.symbol},
        {"date_range", {{"start", format_date(c.start)}, {"end", format_date(c.end)}}},
        {"split", {{"train", c.split.train_fraction}, {"validation", c.split.validation_fraction},
                   {"test", c.split.test_fraction}}},
        {"arima", {{"enabled", c.arima.enabled}, {"d", c.arima.d}, {"p_max", c.arima.p_max},
                   {"q_max", c.arima.q_max}, {"policies", policies},
                   {"reselect_each_step", c.arima.reselect_each_step}}},
        {"arima_garch", {{"enabled", c.arima_garch_enabled}}},
        {"lstm", lstm},
        {"mlp", mlp},
        {"seed", c.seed},
        {"output_dir", c.output_dir.generic_string()},
        {"data", c.data ? json(c.data->generic_string()) : json(nullptr)},
        {"endpoint", c.endpoint},
    };
}

AppConfig config_from_json(const json& j) {
    AppConfig c;
    try {
        reject_unknown(j, {"symbol", "date_range", "split", "arima", "arima_garch", "lstm", "mlp", "seed",
                           "output_dir", "data", "endpoint"},
                       "top level");
        c.symbol = j.value("symbol", c.symbol);
        if (j.contains("date_range")) {
            const json& r = j["date_range"];
            reject_unknown(r, {"start", "end"}, "date_range");
            c.start = date_field(r, "start", c.start);
            c.end = date_field(r, "end", c.end);
        }
        if (j.contains("split")) {
            const json& s = j["split"];
            reject_unknown(s, {"train", "validation", "test"}, "split");
            c.split.train_fraction = s.value("train", c.split.train_fraction);
            c.split.validation_fraction = s.value("validation", c.split.validation_fraction);
            c.split.test_fraction = s.value("test", c.split.test_fraction);
        }
        if (j.contains("arima")) {
            const json& a = j["arima"];
            reject_unknown(a, {"enabled", "d", "p_max", "q_max", "policies", "reselect_each_step"}, "arima");
            c.arima.enabled = a.value("enabled", c.arima.enabled);
            c.arima.d = a.value("d", c.arima.d);
            c.arima.p_max = a.value("p_max", c.arima.p_max);
            c.arima.q_max = a.value("q_max", c.arima.q_max);
            c.arima.reselect_each_step = a.value("reselect_each_step", c.arima.reselect_each_step);
            if (a.contains("policies")) {
                c.arima.policies.clear();
                for (const auto& p : a["policies"]) {
                    c.arima.policies.push_back(walkforward::window_policy_from_string(p.get<std::string>()));
                }
            }
        }
        if (j.contains("arima_garch")) {
            reject_unknown(j["arima_garch"], {"enabled"}, "arima_garch");
            c.arima_garch_enabled = j["arima_garch"].value("enabled", c.arima_garch_enabled);
        }
        if (j.contains("lstm")) {
            c.lstm_enabled = j["lstm"].value("enabled", c.lstm_enabled);
            c.lstm = neural::lstm_config_from_json(without(j["lstm"], "enabled"));
        }
        if (j.contains("mlp")) {
            c.mlp_enabled = j["mlp"].value("enabled", c.mlp_enabled);
            c.mlp = neural::mlp_config_from_json(without(j["mlp"], "enabled"));
        }
        c.seed = j.value("seed", c.seed);
        c.output_dir = j.value("output_dir", c.output_dir.string());
        if (j.contains("data") && !j["data"].is_null()) c.data = j["data"].get<std::string>();
        c.endpoint = j.value("endpoint", c.endpoint);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    c.lstm.seed = c.seed;
    c.mlp.seed = c.seed;
    c.validate();
    return c;
}

AppConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace quantcast::app
