#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "risbeam/errors.hpp"
#include "risbeam/fieldmap.hpp"
#include "risbeam/metrics.hpp"
#include "risbeam/optimizer.hpp"

namespace risbeam {

// CSV layout:
//   # mode=<mode> count_u=<n> count_v=<n> spacing_m=<s> digest=<hex>
//   count_v rows of count_u comma-separated dBm values, 4 decimals; row j holds cells (0..count_u-1, j).
//   Sentinel cells are written as the literal `floor`.
//
// PGM layout: binary P5, width count_u, height count_v, maxval 65535, big-endian samples,
// row 0 = j 0. Values are first rounded to CSV precision, clamped to [min, max] and mapped
// linearly onto 0..65535; sentinel cells are 0.

inline std::string format_fixed(double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

/// The value a CSV cell round-trips to.
inline double csv_quantize(double v) { return std::strtod(format_fixed(v, 4).c_str(), nullptr); }

namespace detail {

inline void write_file(const std::string& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("write failed for '" + path + "'");
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

inline std::string powermap_csv(const PowerMap& map)
{
    map.validate();
    std::string out = "# mode=" + std::string(to_string(map.mode)) + " count_u=" + std::to_string(map.grid.count_u) +
                      " count_v=" + std::to_string(map.grid.count_v) +
                      " spacing_m=" + format_fixed(map.grid.spacing, 6) + " digest=" + map.scenario_digest + "\n";
    for (int j = 0; j < map.grid.count_v; ++j) {
        for (int i = 0; i < map.grid.count_u; ++i) {
            if (i)
                out += ',';
            out += map.is_sentinel(i, j) ? std::string("floor") : format_fixed(map.at(i, j), 4);
        }
        out += '\n';
    }
    return out;
}

inline void write_powermap_csv(const PowerMap& map, const std::string& path)
{
    detail::write_file(path, powermap_csv(map));
}

/// Reads a CSV written by write_powermap_csv. Grid origin and axes are not stored and come back as defaults.
inline PowerMap parse_powermap_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header) || header.rfind("# ", 0) != 0)
        throw IoError("power map CSV: missing header line");

    PowerMap map;
    std::istringstream hs(header.substr(2));
    for (std::string field; hs >> field;) {
        const auto eq = field.find('=');
        if (eq == std::string::npos)
            throw IoError("power map CSV: malformed header field '" + field + "'");
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "mode")
            map.mode = value == "rx-sweep" ? SweepMode::rx_sweep : SweepMode::target_sweep;
        else if (key == "count_u")
            map.grid.count_u = std::stoi(value);
        else if (key == "count_v")
            map.grid.count_v = std::stoi(value);
        else if (key == "spacing_m")
            map.grid.spacing = std::stod(value);
        else if (key == "digest")
            map.scenario_digest = value;
    }
    map.grid.validate();
    map.values.assign(map.grid.size(), 0.0);
    map.sentinel_mask.assign(map.grid.size(), 0);

    std::string line;
    for (int j = 0; j < map.grid.count_v; ++j) {
        if (!std::getline(in, line))
            throw IoError("power map CSV: expected " + std::to_string(map.grid.count_v) + " data rows");
        std::istringstream ls(line);
        std::string cell;
        for (int i = 0; i < map.grid.count_u; ++i) {
            if (!std::getline(ls, cell, ','))
                throw IoError("power map CSV: row " + std::to_string(j) + " is short");
            const auto k = map.grid.index(i, j);
            if (cell == "floor") {
                map.values[k] = kFloorDbm;
                map.sentinel_mask[k] = 1;
            } else {
                char* end = nullptr;
                map.values[k] = std::strtod(cell.c_str(), &end);
                if (end == cell.c_str() || *end != '\0')
                    throw IoError("power map CSV: bad value '" + cell + "'");
            }
        }
        if (std::getline(ls, cell, ','))
            throw IoError("power map CSV: row " + std::to_string(j) + " is long");
    }
    return map;
}

inline PowerMap read_powermap_csv(const std::string& path) { return parse_powermap_csv(detail::read_file(path)); }

/// Min/max over non-sentinel cells at CSV precision, widened by 1 dB each way if flat.
inline std::pair<double, double> auto_pgm_range(const PowerMap& map)
{
    bool any = false;
    double lo = 0.0, hi = 0.0;
    for (std::size_t k = 0; k < map.values.size(); ++k) {
        if (map.sentinel_mask[k])
            continue;
        const double v = csv_quantize(map.values[k]);
        lo = any ? std::min(lo, v) : v;
        hi = any ? std::max(hi, v) : v;
        any = true;
    }
    if (!any)
        return {kFloorDbm, kFloorDbm + 1.0};
    if (!(hi > lo)) {
        lo -= 1.0;
        hi += 1.0;
    }
    return {lo, hi};
}

inline std::uint16_t pgm_level(double dbm, double lo, double hi)
{
    const double v = csv_quantize(dbm);
    if (v <= lo)
        return 0;
    if (v >= hi)
        return 65535;
    return static_cast<std::uint16_t>(std::lround((v - lo) / (hi - lo) * 65535.0));
}

inline std::string powermap_pgm(const PowerMap& map, std::pair<double, double> range)
{
    map.validate();
    const auto [lo, hi] = range;
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw IoError("PGM range must satisfy min < max");
    std::string out = "P5\n" + std::to_string(map.grid.count_u) + " " + std::to_string(map.grid.count_v) + "\n65535\n";
    out.reserve(out.size() + 2 * map.grid.size());
    for (int j = 0; j < map.grid.count_v; ++j)
        for (int i = 0; i < map.grid.count_u; ++i) {
            const std::uint16_t p = map.is_sentinel(i, j) ? 0 : pgm_level(map.at(i, j), lo, hi);
            out += static_cast<char>(p >> 8);
            out += static_cast<char>(p & 0xff);
        }
    return out;
}

inline void write_powermap_pgm(const PowerMap& map, const std::string& path, std::pair<double, double> range)
{
    detail::write_file(path, powermap_pgm(map, range));
}

// Report key set:
//   peak_value_dbm, peak_cell (i, j), peak_offset_from_rx_m,
//   drop.<k>.radius_m / .max_db / .mean_db / .cells for each analysis radius,
//   halfpower_extent_u_m, halfpower_extent_v_m, axis_u_role, axis_v_role,
//   area_above.<threshold>db_cells for each threshold.
inline std::string report_text(const SelectivityReport& r)
{
    std::ostringstream o;
    o << "peak_value_dbm = " << format_fixed(r.peak_value, 4) << "\n"
      << "peak_cell = " << r.peak_i << ", " << r.peak_j << "\n"
      << "peak_offset_from_rx_m = " << format_fixed(r.peak_offset_from_rx, 4) << "\n";
    for (std::size_t k = 0; k < r.drop_at_radii.size(); ++k) {
        const auto& d = r.drop_at_radii[k];
        o << "drop." << k << ".radius_m = " << format_fixed(d.radius, 4) << "\n"
          << "drop." << k << ".max_db = " << format_fixed(d.max_drop_db, 4) << "\n"
          << "drop." << k << ".mean_db = " << format_fixed(d.mean_drop_db, 4) << "\n"
          << "drop." << k << ".cells = " << d.cells << "\n";
    }
    o << "halfpower_extent_u_m = " << format_fixed(r.halfpower_extent_u, 4) << "\n"
      << "halfpower_extent_v_m = " << format_fixed(r.halfpower_extent_v, 4) << "\n"
      << "axis_u_role = " << to_string(r.axis_u_role) << "\n"
      << "axis_v_role = " << to_string(r.axis_v_role) << "\n";
    for (const auto& [t, n] : r.area_above)
        o << "area_above." << format_fixed(t, 1) << "db_cells = " << n << "\n";
    return o.str();
}

inline std::string verdict_text(const BroadeningVerdict& v)
{
    std::ostringstream o;
    o << "ratio_u = " << format_fixed(v.ratio_u, 4) << "\n"
      << "ratio_v = " << format_fixed(v.ratio_v, 4) << "\n"
      << "broadened_u = " << (v.broadened_u ? "true" : "false") << "\n"
      << "broadened_v = " << (v.broadened_v ? "true" : "false") << "\n"
      << "axis_u_role = " << to_string(v.axis_u_role) << "\n"
      << "axis_v_role = " << to_string(v.axis_v_role) << "\n";
    if (v.depth_ratio)
        o << "depth_ratio = " << format_fixed(*v.depth_ratio, 4) << "\n";
    if (v.lateral_ratio)
        o << "lateral_ratio = " << format_fixed(*v.lateral_ratio, 4) << "\n";
    return o.str();
}

inline void write_state_bitmap(const RisConfig& config, const std::string& path)
{
    const auto bytes = pack_states(config.states);
    detail::write_file(path, std::string(bytes.begin(), bytes.end()));
}

inline std::vector<PhaseState> read_state_bitmap(const std::string& path, std::size_t element_count)
{
    const std::string raw = detail::read_file(path);
    const std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
    return unpack_states(bytes, element_count);
}

inline std::string config_text(const RisConfig& c)
{
    std::ostringstream o;
    o << "elements = " << c.states.size() << "\n";
    if (c.hypothesis)
        o << "hypothesis_rad = " << format_fixed(*c.hypothesis, 6) << "\n";
    o << "predicted_gain_db = " << format_fixed(c.predicted_gain_db, 4) << "\n";
    std::size_t active = 0;
    for (auto s : c.states)
        active += s == PhaseState::pi;
    o << "pi_state_elements = " << active << "\n";
    return o.str();
}

} // namespace risbeam
