#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "risbeam/channel.hpp"
#include "risbeam/geometry.hpp"

namespace risbeam {

/// Ordered phase hypotheses for the common receive phase.
struct HypothesisSet {
    std::vector<double> values{0.0, std::numbers::pi / 2.0, std::numbers::pi, 3.0 * std::numbers::pi / 2.0};

    std::size_t count() const { return values.size(); }

    /// T evenly spaced hypotheses 2 pi t / T.
    static HypothesisSet evenly_spaced(int count)
    {
        if (count <= 0)
            throw OptimizerError("HypothesisSet: count must be positive");
        HypothesisSet set;
        set.values.clear();
        for (int t = 0; t < count; ++t)
            set.values.push_back(kTwoPi * t / count);
        return set;
    }

    void validate() const
    {
        if (values.empty())
            throw OptimizerError("HypothesisSet: at least one hypothesis required");
        for (std::size_t t = 0; t < values.size(); ++t) {
            if (!(values[t] >= 0.0 && values[t] < kTwoPi))
                throw OptimizerError("HypothesisSet: values must lie in [0, 2pi)");
            if (t > 0 && !(values[t] > values[t - 1]))
                throw OptimizerError("HypothesisSet: values must be strictly increasing");
        }
    }

    friend bool operator==(const HypothesisSet&, const HypothesisSet&) = default;
};

/// Transmitter specification: explicit point, four patch antennas, or a distance along the panel normal.
struct TxAtPosition {
    Vec3 position;
    friend bool operator==(const TxAtPosition&, const TxAtPosition&) = default;
};
struct TxFromPatches {
    std::array<Vec3, 4> patches;
    friend bool operator==(const TxFromPatches&, const TxFromPatches&) = default;
};
struct TxOnBoresight {
    double distance_m;
    friend bool operator==(const TxOnBoresight&, const TxOnBoresight&) = default;
};
using TxSpec = std::variant<TxAtPosition, TxFromPatches, TxOnBoresight>;

enum class RunMode { target_sweep, rx_sweep, optimize_single, compare_near_far, brute_check };

struct RunSettings {
    RunMode mode = RunMode::target_sweep;
    int workers = 1;
    std::string out_dir = "out";
    friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

/// Complete experiment description.
struct Scenario {
    std::string name;
    RfParams rf;
    RisLayout layout;
    Pose pose;
    TxSpec tx = TxOnBoresight{0.587};
    Vec3 rx;
    GridSpec grid;
    HypothesisSet hypotheses;
    AmplitudeModel amplitude = AmplitudeModel::printed;
    RunSettings run;

    Vec3 tx_position() const
    {
        return std::visit(
            [this](const auto& spec) -> Vec3 {
                using T = std::decay_t<decltype(spec)>;
                if constexpr (std::is_same_v<T, TxAtPosition>)
                    return spec.position;
                else if constexpr (std::is_same_v<T, TxFromPatches>)
                    return equivalent_tx_position(spec.patches);
                else
                    return pose.origin + spec.distance_m * pose.normal;
            },
            tx);
    }

    std::size_t element_count() const { return layout.element_count(); }

    void validate() const
    {
        if (!(rf.carrier_freq > 0.0) || !std::isfinite(rf.carrier_freq))
            throw ChannelError("rf: carrier frequency must be positive");
        if (std::abs(rf.wavelength * rf.carrier_freq / kSpeedOfLight - 1.0) > 1e-6)
            throw ChannelError("rf: wavelength inconsistent with carrier frequency");
        if (!std::isfinite(rf.tx_gain_db) || !std::isfinite(rf.rx_gain_db) || !std::isfinite(rf.tx_power_dbm))
            throw ChannelError("rf: gains and power must be finite");
        layout.validate();
        pose.validate();
        grid.validate();
        hypotheses.validate();
        if (const auto* b = std::get_if<TxOnBoresight>(&tx); b && !(b->distance_m > 0.0))
            throw GeometryError("tx: boresight distance must be positive");
        if (!is_finite(tx_position()) || !is_finite(rx))
            throw GeometryError("tx/rx: non-finite position");
        if (run.workers <= 0)
            throw ScenarioError("run: workers must be positive");
    }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

} // namespace risbeam
