#include "imdd/presets.hpp"

#include <string>

#include "imdd/errors.hpp"

namespace imdd {

Preset table_preset(std::string_view name) {
    LinkParams link;
    link.rin_db_hz = -140.0;
    link.er_db = 5.0;
    link.length_km = 2.0;
    link.alpha_db_km = 0.35;
    link.responsivity_a_w = 0.5;
    link.thermal_asd = 18e-12;
    if (name == "pam4") {
        link.bandwidth_hz = 68e9;
        return Preset{link, Constellation::equally_spaced(4)};
    }
    if (name == "pam6") {
        link.bandwidth_hz = 52e9;
        return Preset{link, Constellation::equally_spaced(6)};
    }
    if (name == "pam8") {
        link.bandwidth_hz = 45e9;
        return Preset{link, Constellation::equally_spaced(8)};
    }
    throw ConfigError("preset", "unknown preset '" + std::string(name) +
                                    "' (expected pam4, pam6, or pam8)");
}

} // namespace imdd
