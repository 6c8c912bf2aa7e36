#ifndef IMDD_CONFIG_HPP
#define IMDD_CONFIG_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "imdd/detection.hpp"
#include "imdd/link_model.hpp"
#include "imdd/monte_carlo.hpp"

namespace imdd {

struct OmaGrid {
    double start_dbm = 0.0;
    double stop_dbm = 0.0;
    double step_dbm = 1.0;

    std::vector<double> points() const; // inclusive of both endpoints
};

struct OutputSpec {
    std::string csv_path;  // empty = stdout
    std::string json_path; // empty = no JSON mirror
};

/// Fully expanded run description. Presets are applied at parse time and then
/// overridden field-by-field, so the echoed document reproduces the run.
struct RunConfig {
    LinkParams link;
    Constellation constellation = Constellation::equally_spaced(4);
    OmaGrid grid;
    std::vector<ThresholdRule> rules{ThresholdRule::OptimalExact, ThresholdRule::UniformApprox};
    McConfig mc;
    OutputSpec outputs;
    std::string preset_name; // echo only

    // Throws ConfigError naming the offending field.
    static RunConfig from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;
    void validate() const;
};

} // namespace imdd

#endif
