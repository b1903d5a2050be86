#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "risbeam/errors.hpp"

namespace risbeam {

using Complex = std::complex<double>;

inline constexpr double kSpeedOfLight = 2.99792458e8;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFloorDbm = -200.0;

/// Reduces an angle into [0, 2pi).
inline double wrap_phase(double phase)
{
    double r = std::fmod(phase, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    if (r >= kTwoPi)
        r = 0.0;
    return r;
}

inline double db_to_linear_power(double db) { return std::pow(10.0, db / 10.0); }

struct RfParams {
    double carrier_freq = 5.375e9;
    double wavelength = kSpeedOfLight / 5.375e9;
    double tx_gain_db = 0.0;
    double rx_gain_db = 0.0;
    double tx_power_dbm = 0.0;

    static RfParams make(double freq_hz, double tx_gain_db = 0.0, double rx_gain_db = 0.0, double tx_power_dbm = 0.0)
    {
        if (!(freq_hz > 0.0) || !std::isfinite(freq_hz))
            throw ChannelError("RfParams: carrier frequency must be positive");
        return {freq_hz, kSpeedOfLight / freq_hz, tx_gain_db, rx_gain_db, tx_power_dbm};
    }

    /// sqrt(G_T * G_R) with gains converted from dBi.
    double gain_factor() const { return std::sqrt(db_to_linear_power(tx_gain_db) * db_to_linear_power(rx_gain_db)); }

    friend bool operator==(const RfParams&, const RfParams&) = default;
};

/// Binary reflection state of one element.
enum class PhaseState : std::uint8_t { zero = 0, pi = 1 };

inline double phase_of(PhaseState s) { return s == PhaseState::pi ? std::numbers::pi : 0.0; }

/// How the prototype's "0.5012 (-3 dB)" loss for the pi state enters the field sum.
enum class AmplitudeModel {
    printed, ///< 0.5012 applied as a field amplitude (as written in the optimization sum)
    power,   ///< 0.5012 treated as a power ratio, i.e. amplitude sqrt(0.5012)
};

inline constexpr double kPiStateLoss = 0.5012;

inline double pi_state_amplitude(AmplitudeModel model)
{
    return model == AmplitudeModel::printed ? kPiStateLoss : std::sqrt(kPiStateLoss);
}

/// A_m(tau): reflection amplitude for a binary state.
inline double reflection_amplitude(PhaseState s, AmplitudeModel model = AmplitudeModel::printed)
{
    return s == PhaseState::pi ? pi_state_amplitude(model) : 1.0;
}

struct RisConfig {
    std::vector<PhaseState> states;
    /// Phase hypothesis that produced the configuration; empty for exhaustive search results.
    std::optional<double> hypothesis;
    double predicted_gain_db = 0.0;

    friend bool operator==(const RisConfig&, const RisConfig&) = default;
};

/// Free-space coefficient c/(4 pi f d) * exp(+j 2 pi d / lambda).
inline Complex freespace_coeff(double d, const RfParams& rf)
{
    if (!(d > 0.0) || !std::isfinite(d))
        throw ChannelError("freespace_coeff: distance must be positive, got " + std::to_string(d));
    const double magnitude = kSpeedOfLight / (4.0 * std::numbers::pi * rf.carrier_freq * d);
    return std::polar(magnitude, wrap_phase(kTwoPi / rf.wavelength * d));
}

inline Complex cascaded_coeff(const Complex& h, const Complex& g) { return h * g; }

/// Phase of the Tx -> element -> Rx path, in [0, 2pi).
inline double cascaded_phase(double d_h, double d_g, double wavelength)
{
    if (!(d_h > 0.0) || !(d_g > 0.0))
        throw ChannelError("cascaded_phase: distances must be positive");
    const double k = kTwoPi / wavelength;
    return wrap_phase(wrap_phase(k * d_h) + wrap_phase(k * d_g));
}

/// sqrt(G_T G_R) * sum_m casc_m * A(s_m) * exp(j s_m), accumulated in ascending element order.
inline Complex effective_channel(std::span<const Complex> casc, std::span<const PhaseState> states,
                                 const RfParams& rf, AmplitudeModel model = AmplitudeModel::printed)
{
    if (casc.size() != states.size())
        throw ChannelError("effective_channel: " + std::to_string(casc.size()) + " coefficients but " +
                           std::to_string(states.size()) + " states");
    const double off = pi_state_amplitude(model);
    Complex sum{0.0, 0.0};
    for (std::size_t m = 0; m < casc.size(); ++m)
        sum += states[m] == PhaseState::pi ? casc[m] * -off : casc[m];
    return rf.gain_factor() * sum;
}

inline Complex effective_channel(std::span<const Complex> casc, const RisConfig& config, const RfParams& rf,
                                 AmplitudeModel model = AmplitudeModel::printed)
{
    return effective_channel(casc, std::span<const PhaseState>(config.states), rf, model);
}

/// Unit-amplitude continuous phase shifts; the reference for what binary states approximate.
inline Complex effective_channel_continuous(std::span<const Complex> casc, std::span<const double> phases,
                                            const RfParams& rf)
{
    if (casc.size() != phases.size())
        throw ChannelError("effective_channel_continuous: length mismatch");
    Complex sum{0.0, 0.0};
    for (std::size_t m = 0; m < casc.size(); ++m)
        sum += casc[m] * std::polar(1.0, phases[m]);
    return rf.gain_factor() * sum;
}

/// P_t + 20 log10 |h_eff|; a zero channel maps to kFloorDbm.
inline double received_power_dbm(const Complex& h_eff, const RfParams& rf)
{
    const double mag = std::abs(h_eff);
    if (!(mag > 0.0))
        return kFloorDbm;
    return rf.tx_power_dbm + 20.0 * std::log10(mag);
}

} // namespace risbeam
