#include "imdd/config.hpp"

#include <cmath>
#include <set>
#include <string>

#include "imdd/errors.hpp"
#include "imdd/presets.hpp"

namespace imdd {

namespace {

double as_number(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number())
        throw ConfigError(path, "expected a number");
    return j.get<double>();
}

std::uint64_t as_u64(const nlohmann::json& j, const std::string& path) {
    if (j.is_number_unsigned())
        return j.get<std::uint64_t>();
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0)
            throw ConfigError(path, "expected a nonnegative integer");
        return static_cast<std::uint64_t>(v);
    }
    throw ConfigError(path, "expected a nonnegative integer");
}

void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& known,
                    const std::string& prefix) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!known.count(key))
            throw ConfigError(prefix.empty() ? key : prefix + "." + key, "unknown field");
    }
}

void apply_link(LinkParams& link, const nlohmann::json& j) {
    reject_unknown(j, {"rin_db_hz", "er_db", "length_km", "alpha_db_km", "responsivity_a_w",
                       "thermal_asd", "bandwidth_hz"},
                   "link");
    if (j.contains("rin_db_hz")) {
        if (j.at("rin_db_hz").is_null())
            link.rin_db_hz.reset(); // explicit null switches RIN off
        else
            link.rin_db_hz = as_number(j.at("rin_db_hz"), "link.rin_db_hz");
    }
    if (j.contains("er_db")) link.er_db = as_number(j.at("er_db"), "link.er_db");
    if (j.contains("length_km")) link.length_km = as_number(j.at("length_km"), "link.length_km");
    if (j.contains("alpha_db_km"))
        link.alpha_db_km = as_number(j.at("alpha_db_km"), "link.alpha_db_km");
    if (j.contains("responsivity_a_w"))
        link.responsivity_a_w = as_number(j.at("responsivity_a_w"), "link.responsivity_a_w");
    if (j.contains("thermal_asd"))
        link.thermal_asd = as_number(j.at("thermal_asd"), "link.thermal_asd");
    if (j.contains("bandwidth_hz"))
        link.bandwidth_hz = as_number(j.at("bandwidth_hz"), "link.bandwidth_hz");
}

} // namespace

std::vector<double> OmaGrid::points() const {
    const auto n =
        static_cast<std::size_t>(std::floor((stop_dbm - start_dbm) / step_dbm + 1e-9)) + 1;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = start_dbm + static_cast<double>(i) * step_dbm;
    return out;
}

RunConfig RunConfig::from_json(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw ConfigError("", "config document must be a JSON object");
    reject_unknown(doc, {"preset", "link", "constellation", "oma_grid_dbm", "rules", "mc",
                         "outputs"},
                   "");

    RunConfig cfg;
    if (doc.contains("preset")) {
        if (!doc.at("preset").is_string())
            throw ConfigError("preset", "expected a string");
        cfg.preset_name = doc.at("preset").get<std::string>();
        Preset preset = table_preset(cfg.preset_name);
        cfg.link = preset.link;
        cfg.constellation = std::move(preset.constellation);
    }
    if (doc.contains("link")) {
        if (!doc.at("link").is_object())
            throw ConfigError("link", "expected an object");
        apply_link(cfg.link, doc.at("link"));
    }
    if (doc.contains("constellation")) {
        try {
            cfg.constellation = Constellation::from_json(doc.at("constellation"));
        } catch (const std::exception& e) {
            throw ConfigError("constellation", e.what());
        }
    }
    if (doc.contains("oma_grid_dbm")) {
        const auto& g = doc.at("oma_grid_dbm");
        if (!g.is_object())
            throw ConfigError("oma_grid_dbm", "expected an object");
        reject_unknown(g, {"start", "stop", "step"}, "oma_grid_dbm");
        if (g.contains("start")) cfg.grid.start_dbm = as_number(g.at("start"), "oma_grid_dbm.start");
        if (g.contains("stop")) cfg.grid.stop_dbm = as_number(g.at("stop"), "oma_grid_dbm.stop");
        if (g.contains("step")) cfg.grid.step_dbm = as_number(g.at("step"), "oma_grid_dbm.step");
    }
    if (doc.contains("rules")) {
        if (!doc.at("rules").is_array())
            throw ConfigError("rules", "expected an array of rule names");
        cfg.rules.clear();
        for (const auto& r : doc.at("rules")) {
            if (!r.is_string())
                throw ConfigError("rules", "expected rule names as strings");
            const auto rule = rule_from_token(r.get<std::string>());
            if (!rule)
                throw ConfigError("rules", "unknown rule '" + r.get<std::string>() +
                                               "' (expected optimal, uniform-exact, approx, awgn)");
            cfg.rules.push_back(*rule);
        }
    }
    if (doc.contains("mc")) {
        const auto& m = doc.at("mc");
        if (!m.is_object())
            throw ConfigError("mc", "expected an object");
        reject_unknown(m, {"seed", "min_errors", "max_symbols", "batch"}, "mc");
        if (m.contains("seed")) cfg.mc.seed = as_u64(m.at("seed"), "mc.seed");
        if (m.contains("min_errors")) cfg.mc.min_errors = as_u64(m.at("min_errors"), "mc.min_errors");
        if (m.contains("max_symbols"))
            cfg.mc.max_symbols = as_u64(m.at("max_symbols"), "mc.max_symbols");
        if (m.contains("batch")) cfg.mc.batch = as_u64(m.at("batch"), "mc.batch");
    }
    if (doc.contains("outputs")) {
        const auto& o = doc.at("outputs");
        if (!o.is_object())
            throw ConfigError("outputs", "expected an object");
        reject_unknown(o, {"csv", "json"}, "outputs");
        if (o.contains("csv")) cfg.outputs.csv_path = o.at("csv").get<std::string>();
        if (o.contains("json")) cfg.outputs.json_path = o.at("json").get<std::string>();
    }
    cfg.validate();
    return cfg;
}

void RunConfig::validate() const {
    try {
        link.validate();
    } catch (const std::exception& e) {
        throw ConfigError("link", e.what());
    }
    if (!(grid.step_dbm > 0.0))
        throw ConfigError("oma_grid_dbm.step", "step must be > 0");
    if (grid.stop_dbm < grid.start_dbm)
        throw ConfigError("oma_grid_dbm.stop", "stop must be >= start");
    try {
        mc.validate();
    } catch (const std::exception& e) {
        throw ConfigError("mc", e.what());
    }
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json link_doc{{"er_db", link.er_db},
                            {"length_km", link.length_km},
                            {"alpha_db_km", link.alpha_db_km},
                            {"responsivity_a_w", link.responsivity_a_w},
                            {"thermal_asd", link.thermal_asd},
                            {"bandwidth_hz", link.bandwidth_hz}};
    link_doc["rin_db_hz"] = link.rin_db_hz ? nlohmann::json(*link.rin_db_hz) : nlohmann::json();
    nlohmann::json rule_names = nlohmann::json::array();
    for (ThresholdRule r : rules)
        rule_names.push_back(std::string(rule_token(r)));
    nlohmann::json doc{
        {"link", link_doc},
        {"constellation", constellation.to_json()},
        {"oma_grid_dbm",
         {{"start", grid.start_dbm}, {"stop", grid.stop_dbm}, {"step", grid.step_dbm}}},
        {"rules", rule_names},
        {"mc",
         {{"seed", mc.seed},
          {"min_errors", mc.min_errors},
          {"max_symbols", mc.max_symbols},
          {"batch", mc.batch}}},
        {"outputs", {{"csv", outputs.csv_path}, {"json", outputs.json_path}}}};
    if (!preset_name.empty())
        doc["preset"] = preset_name;
    return doc;
}

} // namespace imdd
