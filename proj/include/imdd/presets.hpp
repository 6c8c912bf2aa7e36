#ifndef IMDD_PRESETS_HPP
#define IMDD_PRESETS_HPP

#include <string_view>

#include "imdd/link_model.hpp"

namespace imdd {

/// Named operating point: link parameters plus the matching PAM grid.
struct Preset {
    LinkParams link;
    Constellation constellation;
};

// "pam4" | "pam6" | "pam8": RIN -140 dB/Hz, ER 5 dB, 2 km at 0.35 dB/km,
// responsivity 0.5 A/W, thermal 18 pA/rtHz; bandwidth 68/52/45 GHz and
// equally spaced +-(M-1) grids. Throws ConfigError on unknown names.
Preset table_preset(std::string_view name);

} // namespace imdd

#endif
