#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "risbeam/scenario.hpp"
#include "risbeam/scenario_io.hpp"

// Bundled scenarios. Published hardware constants: 5.375 GHz carrier, 3 x 2 modules of
// 16 x 16 cells at 360 mm x 247 mm, surface center 3.6 m above ground, Tx 0.587 m in front
// of the surface, receiver 1.1 m above ground, 10 cm grid pitch.
//
// Placeholders (not published): antenna gains, transmit power, receiver coordinates and
// grid extents. Area 1 is an open region in front of the surface; area 2 is a narrow
// corridor offset to one side. Axis u is lateral (azimuth), axis v points away from the
// surface (elevation).

namespace risbeam {

namespace detail {

inline std::string preset_text(std::string_view name, std::string_view rx, std::string_view grid_origin, int count_u)
{
    std::string s;
    s += "[scenario]\nname = ";
    s += name;
    s += R"(

[rf]
freq_hz = 5.375e9
tx_gain_dbi = 6        # placeholder
rx_gain_dbi = 15       # placeholder, horn antenna
tx_power_dbm = 0       # placeholder

[ris]
modules_across = 3
modules_down = 2
cells_per_module_side = 16
module_width_m = 0.360
module_height_m = 0.247
center_m = 0, 0, 3.6
right = 0, 1, 0
up = 0, 0, 1
normal = 1, 0, 0

[tx]
boresight_distance_m = 0.587

[rx]
position_m = )";
    s += rx;
    s += R"(

[grid]
origin_m = )";
    s += grid_origin;
    s += R"(
axis_u = 0, 1, 0
axis_v = 1, 0, 0
count_u = )";
    s += std::to_string(count_u);
    s += R"(
count_v = 91
spacing_m = 0.1

[optimizer]
hypothesis_count = 4
amplitude_model = printed

[run]
mode = target-sweep
workers = 1
out_dir = out
)";
    return s;
}

} // namespace detail

inline const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"area1_near", "area1_far", "area2_near", "area2_far"};
    return names;
}

/// Scenario file text for a bundled preset, or nullopt for an unknown name.
inline std::optional<std::string> preset_text(std::string_view name)
{
    if (name == "area1_near")
        return detail::preset_text(name, "2.0, 0.0, 1.1", "1.0, -1.5, 1.1", 31);
    if (name == "area1_far")
        return detail::preset_text(name, "8.0, 0.0, 1.1", "1.0, -1.5, 1.1", 31);
    if (name == "area2_near")
        return detail::preset_text(name, "2.0, -2.6, 1.1", "1.0, -3.0, 1.1", 9);
    if (name == "area2_far")
        return detail::preset_text(name, "8.0, -2.6, 1.1", "1.0, -3.0, 1.1", 9);
    return std::nullopt;
}

inline Scenario load_preset(std::string_view name)
{
    const auto text = preset_text(name);
    if (!text)
        throw ScenarioError("unknown preset '" + std::string(name) + "'");
    return parse_scenario(*text);
}

} // namespace risbeam
