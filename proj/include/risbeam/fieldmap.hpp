#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "risbeam/channel.hpp"
#include "risbeam/errors.hpp"
#include "risbeam/geometry.hpp"
#include "risbeam/optimizer.hpp"
#include "risbeam/parallel.hpp"
#include "risbeam/scenario.hpp"
#include "risbeam/scenario_io.hpp"

namespace risbeam {

enum class SweepMode { target_sweep, rx_sweep };

inline const char* to_string(SweepMode m) { return m == SweepMode::target_sweep ? "target-sweep" : "rx-sweep"; }

/// Received power over a measurement grid, dBm. values[j * count_u + i] belongs to grid point (i, j).
///
/// In target-sweep mode the value at (i, j) is the power at the FIXED receiver when the
/// surface is configured for grid point (i, j); it is not the power at that point.
struct PowerMap {
    GridSpec grid;
    std::vector<double> values;
    SweepMode mode = SweepMode::target_sweep;
    std::string scenario_digest;
    std::vector<std::uint8_t> sentinel_mask;
    std::optional<Vec3> ris_center;

    double at(int i, int j) const { return values[grid.index(i, j)]; }
    bool is_sentinel(int i, int j) const { return sentinel_mask[grid.index(i, j)] != 0; }

    void validate() const
    {
        grid.validate();
        if (values.size() != grid.size() || sentinel_mask.size() != grid.size())
            throw MetricsError("PowerMap: value array does not match grid dimensions");
        for (std::size_t k = 0; k < values.size(); ++k)
            if (!sentinel_mask[k] && !std::isfinite(values[k]))
                throw MetricsError("PowerMap: non-finite value at index " + std::to_string(k));
    }
};

namespace detail {

[[noreturn]] inline void rethrow_at_cell(const IndexedFailure& f, const GridSpec& grid)
{
    const int i = static_cast<int>(f.index % static_cast<std::size_t>(grid.count_u));
    const int j = static_cast<int>(f.index / static_cast<std::size_t>(grid.count_u));
    const std::string where = "grid cell (" + std::to_string(i) + ", " + std::to_string(j) + "): ";
    try {
        std::rethrow_exception(f.error);
    } catch (const GeometryError& e) {
        throw GeometryError(where + e.what());
    } catch (const ChannelError& e) {
        throw ChannelError(where + e.what());
    } catch (const OptimizerError& e) {
        throw OptimizerError(where + e.what());
    } catch (const std::exception& e) {
        throw SweepError(where + e.what());
    }
}

inline void store_power(PowerMap& map, std::size_t k, const Complex& h, const RfParams& rf)
{
    const bool zero = !(std::abs(h) > 0.0);
    map.values[k] = received_power_dbm(h, rf);
    map.sentinel_mask[k] = zero ? 1 : 0;
}

inline PowerMap empty_map(const Scenario& s, SweepMode mode)
{
    PowerMap map;
    map.grid = s.grid;
    map.mode = mode;
    map.values.assign(s.grid.size(), 0.0);
    map.sentinel_mask.assign(s.grid.size(), 0);
    map.scenario_digest = scenario_digest(s);
    map.ris_center = s.pose.origin;
    return map;
}

} // namespace detail

/// Measurement protocol: optimize for each grid point, read power at the fixed receiver.
inline PowerMap sweep_targets(const Scenario& scenario, int workers = 1)
{
    const Scene scene = Scene::from(scenario);
    PowerMap map = detail::empty_map(scenario, SweepMode::target_sweep);
    const auto rx_casc = cascaded_channels(scene, scenario.rx);

    const auto failure = parallel_for(map.grid.size(), workers, [&](std::size_t k) {
        const int i = static_cast<int>(k % static_cast<std::size_t>(map.grid.count_u));
        const int j = static_cast<int>(k / static_cast<std::size_t>(map.grid.count_u));
        const RisConfig config = optimize_config(map.grid.point(i, j), scene);
        detail::store_power(map, k, effective_channel(rx_casc, config, scene.rf, scene.amplitude), scene.rf);
    });
    if (failure.error)
        detail::rethrow_at_cell(failure, map.grid);
    return map;
}

/// Beam footprint: one fixed configuration, receiver moved over the grid.
inline PowerMap sweep_receivers(const Scenario& scenario, const RisConfig& config, int workers = 1)
{
    const Scene scene = Scene::from(scenario);
    if (config.states.size() != scene.elements.size())
        throw ChannelError("sweep_receivers: configuration has " + std::to_string(config.states.size()) +
                           " states but the surface has " + std::to_string(scene.elements.size()) + " elements");
    PowerMap map = detail::empty_map(scenario, SweepMode::rx_sweep);

    const auto failure = parallel_for(map.grid.size(), workers, [&](std::size_t k) {
        const int i = static_cast<int>(k % static_cast<std::size_t>(map.grid.count_u));
        const int j = static_cast<int>(k / static_cast<std::size_t>(map.grid.count_u));
        const auto casc = cascaded_channels(scene, map.grid.point(i, j));
        detail::store_power(map, k, effective_channel(casc, config, scene.rf, scene.amplitude), scene.rf);
    });
    if (failure.error)
        detail::rethrow_at_cell(failure, map.grid);
    return map;
}

} // namespace risbeam
