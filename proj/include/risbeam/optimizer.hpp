#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "risbeam/channel.hpp"
#include "risbeam/geometry.hpp"
#include "risbeam/scenario.hpp"

namespace risbeam {

/// Scenario with element positions and the equivalent Tx resolved once.
struct Scene {
    RfParams rf;
    Vec3 tx;
    std::vector<Vec3> elements;
    HypothesisSet hypotheses;
    AmplitudeModel amplitude = AmplitudeModel::printed;

    static Scene from(const Scenario& s)
    {
        s.validate();
        return {s.rf, s.tx_position(), element_positions(s.layout, s.pose), s.hypotheses, s.amplitude};
    }
};

/// Tx -> element -> point distances for every element; rejects coincident points.
struct PathLengths {
    std::vector<double> d_h;
    std::vector<double> d_g;
};

inline PathLengths path_lengths(const Scene& scene, const Vec3& point)
{
    PathLengths out;
    out.d_h.reserve(scene.elements.size());
    out.d_g.reserve(scene.elements.size());
    for (std::size_t m = 0; m < scene.elements.size(); ++m) {
        const double dh = distance(scene.tx, scene.elements[m]);
        const double dg = distance(scene.elements[m], point);
        if (!(dh > 0.0))
            throw GeometryError("transmitter coincides with element " + std::to_string(m));
        if (!(dg > 0.0))
            throw GeometryError("target coincides with element " + std::to_string(m));
        out.d_h.push_back(dh);
        out.d_g.push_back(dg);
    }
    return out;
}

inline std::vector<Complex> cascaded_channels(const Scene& scene, const PathLengths& paths)
{
    std::vector<Complex> out(paths.d_h.size());
    for (std::size_t m = 0; m < out.size(); ++m)
        out[m] = cascaded_coeff(freespace_coeff(paths.d_h[m], scene.rf), freespace_coeff(paths.d_g[m], scene.rf));
    return out;
}

inline std::vector<Complex> cascaded_channels(const Scene& scene, const Vec3& point)
{
    return cascaded_channels(scene, path_lengths(scene, point));
}

inline std::vector<double> cascaded_phases(const Scene& scene, const PathLengths& paths)
{
    std::vector<double> out(paths.d_h.size());
    for (std::size_t m = 0; m < out.size(); ++m)
        out[m] = cascaded_phase(paths.d_h[m], paths.d_g[m], scene.rf.wavelength);
    return out;
}

/// phi*_m = theta_t - phi'_m, reduced into [0, 2pi).
inline double continuous_phase(double cascaded, double hypothesis) { return wrap_phase(hypothesis - cascaded); }

/// rd(tau): pi on [pi/2, 3pi/2), 0 elsewhere. Input is normalized first.
inline PhaseState quantize(double tau)
{
    const double t = wrap_phase(tau);
    return (t >= std::numbers::pi / 2.0 && t < 3.0 * std::numbers::pi / 2.0) ? PhaseState::pi : PhaseState::zero;
}

inline double gain_db(const Complex& h) { return 20.0 * std::log10(std::abs(h)); }

/// Quantized configuration for one hypothesis, with its predicted effective channel.
struct Candidate {
    RisConfig config;
    Complex h_eff;
};

inline Candidate evaluate_hypothesis(const Scene& scene, std::span<const Complex> casc,
                                     std::span<const double> phases, double hypothesis)
{
    Candidate c;
    c.config.states.resize(phases.size());
    for (std::size_t m = 0; m < phases.size(); ++m)
        c.config.states[m] = quantize(continuous_phase(phases[m], hypothesis));
    c.config.hypothesis = hypothesis;
    c.h_eff = effective_channel(casc, std::span<const PhaseState>(c.config.states), scene.rf, scene.amplitude);
    c.config.predicted_gain_db = gain_db(c.h_eff);
    return c;
}

/// All hypothesis candidates in hypothesis-set order.
inline std::vector<Candidate> hypothesis_candidates(const Scene& scene, const Vec3& target)
{
    const auto paths = path_lengths(scene, target);
    const auto casc = cascaded_channels(scene, paths);
    const auto phases = cascaded_phases(scene, paths);
    std::vector<Candidate> out;
    out.reserve(scene.hypotheses.count());
    for (double theta : scene.hypotheses.values)
        out.push_back(evaluate_hypothesis(scene, casc, phases, theta));
    return out;
}

/// Best of the quantized hypothesis candidates; ties go to the earliest hypothesis.
inline RisConfig optimize_config(const Vec3& target, const Scene& scene)
{
    auto candidates = hypothesis_candidates(scene, target);
    std::size_t best = 0;
    for (std::size_t t = 1; t < candidates.size(); ++t)
        if (std::abs(candidates[t].h_eff) > std::abs(candidates[best].h_eff))
            best = t;
    return std::move(candidates[best].config);
}

inline RisConfig optimize_config(const Vec3& target, const Scenario& scenario)
{
    return optimize_config(target, Scene::from(scenario));
}

inline constexpr std::size_t kBruteForceMaxElements = 20;

/// Exhaustive search over all 2^NM state vectors for given cascaded coefficients.
/// Bit m of the pattern is element m; ties go to the numerically smallest pattern.
inline RisConfig brute_force_search(std::span<const Complex> casc, const RfParams& rf,
                                    AmplitudeModel amplitude = AmplitudeModel::printed)
{
    const std::size_t n = casc.size();
    if (n > kBruteForceMaxElements)
        throw OptimizerError("brute-force search: NM = " + std::to_string(n) + " exceeds the limit NM <= " +
                             std::to_string(kBruteForceMaxElements));

    std::vector<PhaseState> states(n, PhaseState::zero);
    std::uint32_t best_pattern = 0;
    double best_mag = -1.0;
    const std::uint32_t patterns = std::uint32_t{1} << n;
    for (std::uint32_t p = 0; p < patterns; ++p) {
        for (std::size_t m = 0; m < n; ++m)
            states[m] = ((p >> m) & 1u) ? PhaseState::pi : PhaseState::zero;
        const double mag = std::abs(effective_channel(casc, std::span<const PhaseState>(states), rf, amplitude));
        if (mag > best_mag) {
            best_mag = mag;
            best_pattern = p;
        }
    }

    RisConfig out;
    out.states.resize(n);
    for (std::size_t m = 0; m < n; ++m)
        out.states[m] = ((best_pattern >> m) & 1u) ? PhaseState::pi : PhaseState::zero;
    out.predicted_gain_db = 20.0 * std::log10(best_mag);
    return out;
}

inline RisConfig brute_force_config(const Vec3& target, const Scene& scene)
{
    if (scene.elements.size() > kBruteForceMaxElements)
        throw OptimizerError("brute_force_config: NM = " + std::to_string(scene.elements.size()) +
                             " exceeds the limit NM <= " + std::to_string(kBruteForceMaxElements));
    const auto casc = cascaded_channels(scene, target);
    return brute_force_search(casc, scene.rf, scene.amplitude);
}

inline RisConfig brute_force_config(const Vec3& target, const Scenario& scenario)
{
    return brute_force_config(target, Scene::from(scenario));
}

/// Switch-state bitmap: element m -> byte m/8, bit m%8 (LSB first); 1 means phase pi.
inline std::vector<std::uint8_t> pack_states(std::span<const PhaseState> states)
{
    std::vector<std::uint8_t> bytes((states.size() + 7) / 8, 0);
    for (std::size_t m = 0; m < states.size(); ++m)
        if (states[m] == PhaseState::pi)
            bytes[m / 8] |= static_cast<std::uint8_t>(1u << (m % 8));
    return bytes;
}

inline std::vector<PhaseState> unpack_states(std::span<const std::uint8_t> bytes, std::size_t element_count)
{
    if (bytes.size() != (element_count + 7) / 8)
        throw OptimizerError("unpack_states: expected " + std::to_string((element_count + 7) / 8) +
                             " bytes for " + std::to_string(element_count) + " elements, got " +
                             std::to_string(bytes.size()));
    std::vector<PhaseState> states(element_count);
    for (std::size_t m = 0; m < element_count; ++m)
        states[m] = ((bytes[m / 8] >> (m % 8)) & 1u) ? PhaseState::pi : PhaseState::zero;
    for (std::size_t m = element_count; m < bytes.size() * 8; ++m)
        if ((bytes[m / 8] >> (m % 8)) & 1u)
            throw OptimizerError("unpack_states: padding bits must be zero");
    return states;
}

} // namespace risbeam
