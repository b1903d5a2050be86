#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "risbeam/errors.hpp"
#include "risbeam/fieldmap.hpp"
#include "risbeam/geometry.hpp"

namespace risbeam {

/// Angle that a grid axis predominantly varies, given fixed surface and receiver heights.
enum class AxisRole { elevation, azimuth, unknown };

inline const char* to_string(AxisRole r)
{
    switch (r) {
    case AxisRole::elevation: return "elevation";
    case AxisRole::azimuth: return "azimuth";
    case AxisRole::unknown: return "unknown";
    }
    return "unknown";
}

struct RadiusDrop {
    double radius = 0.0;
    double max_drop_db = 0.0;  ///< largest (peak - value) among cells at distance >= radius from the peak
    double mean_drop_db = 0.0; ///< mean of (peak - value) over the same cells
    std::size_t cells = 0;

    friend bool operator==(const RadiusDrop&, const RadiusDrop&) = default;
};

struct SelectivityReport {
    double peak_value = 0.0;
    int peak_i = 0;
    int peak_j = 0;
    double peak_offset_from_rx = 0.0;
    std::vector<RadiusDrop> drop_at_radii;
    /// Contiguous run through the peak with value >= peak - 3 dB, counted in cell footprints (cells * spacing).
    double halfpower_extent_u = 0.0;
    double halfpower_extent_v = 0.0;
    std::vector<std::pair<double, std::size_t>> area_above;
    AxisRole axis_u_role = AxisRole::unknown;
    AxisRole axis_v_role = AxisRole::unknown;

    friend bool operator==(const SelectivityReport&, const SelectivityReport&) = default;
};

struct AnalysisOptions {
    std::vector<double> radii{0.25, 0.5, 1.0, 2.0};
    std::vector<double> area_thresholds_db{3.0, 6.0, 10.0, 20.0};
    double halfpower_db = 3.0;
};

namespace detail {

/// Whichever axis is more aligned with the horizontal run away from the surface is the elevation axis.
inline std::pair<AxisRole, AxisRole> classify_axes(const GridSpec& grid, const std::optional<Vec3>& ris_center)
{
    if (!ris_center)
        return {AxisRole::unknown, AxisRole::unknown};
    const Vec3 center = grid.point(0, 0) + (0.5 * (grid.count_u - 1) * grid.spacing) * grid.axis_u +
                        (0.5 * (grid.count_v - 1) * grid.spacing) * grid.axis_v;
    const Vec3 away = center - *ris_center;
    const double along_u = std::abs(dot(away, grid.axis_u));
    const double along_v = std::abs(dot(away, grid.axis_v));
    if (along_u > along_v)
        return {AxisRole::elevation, AxisRole::azimuth};
    if (along_v > along_u)
        return {AxisRole::azimuth, AxisRole::elevation};
    return {AxisRole::unknown, AxisRole::unknown};
}

} // namespace detail

inline SelectivityReport analyze(const PowerMap& map, const Vec3& rx_projection, const AnalysisOptions& opt = {})
{
    map.validate();
    const GridSpec& g = map.grid;

    bool found = false;
    SelectivityReport rep;
    for (int i = 0; i < g.count_u; ++i)
        for (int j = 0; j < g.count_v; ++j) {
            if (map.is_sentinel(i, j))
                continue;
            if (!found || map.at(i, j) > rep.peak_value) {
                found = true;
                rep.peak_value = map.at(i, j);
                rep.peak_i = i;
                rep.peak_j = j;
            }
        }
    if (!found)
        throw MetricsError("analyze: every cell of the map is at the sentinel floor");

    const Vec3 peak_point = g.point(rep.peak_i, rep.peak_j);
    rep.peak_offset_from_rx = distance(peak_point, rx_projection);

    for (double r : opt.radii) {
        RadiusDrop d{r, 0.0, 0.0, 0};
        double sum = 0.0;
        for (int j = 0; j < g.count_v; ++j)
            for (int i = 0; i < g.count_u; ++i) {
                if (map.is_sentinel(i, j) || distance(g.point(i, j), peak_point) < r)
                    continue;
                const double drop = rep.peak_value - map.at(i, j);
                d.max_drop_db = d.cells == 0 ? drop : std::max(d.max_drop_db, drop);
                sum += drop;
                ++d.cells;
            }
        if (d.cells)
            d.mean_drop_db = sum / static_cast<double>(d.cells);
        rep.drop_at_radii.push_back(d);
    }

    const double level = rep.peak_value - opt.halfpower_db;
    auto inside = [&](int i, int j) { return !map.is_sentinel(i, j) && map.at(i, j) >= level; };
    int run_u = 1;
    for (int i = rep.peak_i - 1; i >= 0 && inside(i, rep.peak_j); --i)
        ++run_u;
    for (int i = rep.peak_i + 1; i < g.count_u && inside(i, rep.peak_j); ++i)
        ++run_u;
    int run_v = 1;
    for (int j = rep.peak_j - 1; j >= 0 && inside(rep.peak_i, j); --j)
        ++run_v;
    for (int j = rep.peak_j + 1; j < g.count_v && inside(rep.peak_i, j); ++j)
        ++run_v;
    rep.halfpower_extent_u = run_u * g.spacing;
    rep.halfpower_extent_v = run_v * g.spacing;

    for (double t : opt.area_thresholds_db) {
        std::size_t n = 0;
        for (std::size_t k = 0; k < map.values.size(); ++k)
            if (!map.sentinel_mask[k] && map.values[k] >= rep.peak_value - t)
                ++n;
        rep.area_above.emplace_back(t, n);
    }

    std::tie(rep.axis_u_role, rep.axis_v_role) = detail::classify_axes(g, map.ris_center);
    return rep;
}

struct BroadeningVerdict {
    double ratio_u = 1.0; ///< far / near half-power extent along axis u
    double ratio_v = 1.0;
    bool broadened_u = false;
    bool broadened_v = false;
    AxisRole axis_u_role = AxisRole::unknown;
    AxisRole axis_v_role = AxisRole::unknown;
    /// Ratios along the elevation-linked (depth) and azimuth-linked (lateral) axes, when roles are known.
    std::optional<double> depth_ratio;
    std::optional<double> lateral_ratio;
};

inline BroadeningVerdict compare_near_far(const SelectivityReport& near, const SelectivityReport& far)
{
    BroadeningVerdict v;
    v.ratio_u = far.halfpower_extent_u / near.halfpower_extent_u;
    v.ratio_v = far.halfpower_extent_v / near.halfpower_extent_v;
    v.broadened_u = v.ratio_u > 1.0;
    v.broadened_v = v.ratio_v > 1.0;
    if (near.axis_u_role == far.axis_u_role && near.axis_v_role == far.axis_v_role) {
        v.axis_u_role = near.axis_u_role;
        v.axis_v_role = near.axis_v_role;
    }
    if (v.axis_u_role == AxisRole::elevation) {
        v.depth_ratio = v.ratio_u;
        v.lateral_ratio = v.ratio_v;
    } else if (v.axis_v_role == AxisRole::elevation) {
        v.depth_ratio = v.ratio_v;
        v.lateral_ratio = v.ratio_u;
    }
    return v;
}

} // namespace risbeam
