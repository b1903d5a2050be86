#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "risbeam/errors.hpp"
#include "risbeam/export.hpp"
#include "risbeam/fieldmap.hpp"
#include "risbeam/metrics.hpp"
#include "risbeam/optimizer.hpp"
#include "risbeam/presets.hpp"
#include "risbeam/random_scene.hpp"
#include "risbeam/scenario_io.hpp"

namespace risbeam::cli {

enum ExitCode : int {
    ok = 0,
    internal = 1,
    usage = 2,
    scenario = 3,
    geometry = 4,
    channel = 5,
    optimizer = 6,
    sweep = 7,
    metrics = 8,
    io = 9,
};

inline constexpr const char* kExitCodeHelp = "Exit codes: 0 ok, 1 internal error, 2 usage error, 3 scenario file error, "
                                             "4 geometry error, 5 channel error, 6 optimizer error (incl. brute-force "
                                             "size limit), 7 sweep error, 8 metrics error, 9 I/O error.";

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunRequest {
    std::string scenario;
    std::optional<RunMode> mode;
    std::optional<std::string> out_dir;
    std::optional<int> workers;
    std::optional<std::string> config_path;
    std::optional<std::string> scenario2;
    std::optional<std::pair<double, double>> pgm_range;
    std::uint64_t seed = 1;
    int trials = 32;
};

/// A file path if it exists, otherwise a bundled preset name.
inline Scenario resolve_scenario(const std::string& ref)
{
    if (std::filesystem::is_regular_file(ref))
        return load_scenario_file(ref);
    if (preset_text(ref))
        return load_preset(ref);
    throw IoError("scenario '" + ref + "' is neither a readable file nor a bundled preset");
}

/// Orthogonal projection of p onto the grid plane.
inline Vec3 project_onto_grid(const GridSpec& g, const Vec3& p)
{
    const Vec3 n = normalized(cross(g.axis_u, g.axis_v));
    return p - dot(p - g.origin, n) * n;
}

namespace detail {

inline std::string join(const std::string& dir, const char* file) { return (std::filesystem::path(dir) / file).string(); }

inline void write_map_artifacts(const PowerMap& map, const Scenario& s, const RunRequest& req, const std::string& out)
{
    write_powermap_csv(map, join(out, "powermap.csv"));
    write_powermap_pgm(map, join(out, "powermap.pgm"), req.pgm_range ? *req.pgm_range : auto_pgm_range(map));
    const auto report = analyze(map, project_onto_grid(s.grid, s.rx));
    risbeam::detail::write_file(join(out, "report.txt"), report_text(report));
}

inline void brute_check(const Scenario& s, const RunRequest& req, const std::string& out, std::ostream& log)
{
    if (s.element_count() > kBruteForceMaxElements)
        throw OptimizerError("brute-check requires NM <= " + std::to_string(kBruteForceMaxElements) +
                             " elements, scenario has NM = " + std::to_string(s.element_count()));
    const Scene scene = Scene::from(s);
    SceneRng rng(req.seed);
    std::vector<Vec3> targets{s.rx};
    for (int t = 0; t < req.trials; ++t)
        targets.push_back(random_point_in_front(rng, s.pose, 1.0, 8.0));

    std::ostringstream o;
    o << "# target_x_m,target_y_m,target_z_m,analytic_gain_db,exhaustive_gain_db,amplitude_ratio\n";
    double worst = 1.0, total = 0.0;
    for (const auto& t : targets) {
        const auto a = optimize_config(t, scene);
        const auto b = brute_force_config(t, scene);
        const double ratio = std::pow(10.0, (a.predicted_gain_db - b.predicted_gain_db) / 20.0);
        worst = std::min(worst, ratio);
        total += ratio;
        o << format_fixed(t.x, 4) << ',' << format_fixed(t.y, 4) << ',' << format_fixed(t.z, 4) << ','
          << format_fixed(a.predicted_gain_db, 6) << ',' << format_fixed(b.predicted_gain_db, 6) << ','
          << format_fixed(ratio, 6) << '\n';
    }
    o << "# targets=" << targets.size() << " seed=" << req.seed << " min_ratio=" << format_fixed(worst, 6)
      << " mean_ratio=" << format_fixed(total / static_cast<double>(targets.size()), 6) << '\n';
    risbeam::detail::write_file(join(out, "brute_check.csv"), o.str());
    log << "risbeam: brute-check worst amplitude ratio " << format_fixed(worst, 6) << '\n';
}

} // namespace detail

/// Executes a request; throws on failure. Use run() for exit-code mapping.
inline void execute(const RunRequest& req, std::ostream& log)
{
    Scenario s = resolve_scenario(req.scenario);
    const RunMode mode = req.mode.value_or(s.run.mode);
    const int workers = req.workers.value_or(s.run.workers);
    const std::string out = req.out_dir.value_or(s.run.out_dir);

    if (workers <= 0)
        throw UsageError("--workers must be positive");
    if (mode == RunMode::rx_sweep && !req.config_path)
        throw UsageError("mode rx-sweep requires --config PATH");
    if (mode == RunMode::compare_near_far && !req.scenario2)
        throw UsageError("mode compare-near-far requires --scenario2 PATH");
    if (req.pgm_range && !(req.pgm_range->first < req.pgm_range->second))
        throw UsageError("--pgm-range requires MIN < MAX");
    if (req.trials < 0)
        throw UsageError("--trials must be non-negative");

    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec)
        throw IoError("cannot create output directory '" + out + "': " + ec.message());

    log << "risbeam: " << to_string(mode) << " on '" << (s.name.empty() ? req.scenario : s.name) << "' ("
        << s.element_count() << " elements, " << s.grid.size() << " grid cells, " << workers << " workers)\n";

    switch (mode) {
    case RunMode::target_sweep:
        detail::write_map_artifacts(sweep_targets(s, workers), s, req, out);
        break;
    case RunMode::rx_sweep: {
        RisConfig config;
        config.states = read_state_bitmap(*req.config_path, s.element_count());
        detail::write_map_artifacts(sweep_receivers(s, config, workers), s, req, out);
        break;
    }
    case RunMode::optimize_single: {
        const auto config = optimize_config(s.rx, s);
        write_state_bitmap(config, detail::join(out, "config.bin"));
        risbeam::detail::write_file(detail::join(out, "config.txt"), config_text(config));
        break;
    }
    case RunMode::compare_near_far: {
        const Scenario far = resolve_scenario(*req.scenario2);
        if (!(far.grid == s.grid))
            throw MetricsError("compare-near-far: both scenarios must share the same grid");
        const auto near_report = analyze(sweep_targets(s, workers), project_onto_grid(s.grid, s.rx));
        const auto far_report = analyze(sweep_targets(far, workers), project_onto_grid(far.grid, far.rx));
        risbeam::detail::write_file(detail::join(out, "near_report.txt"), report_text(near_report));
        risbeam::detail::write_file(detail::join(out, "far_report.txt"), report_text(far_report));
        risbeam::detail::write_file(detail::join(out, "verdict.txt"),
                                    verdict_text(compare_near_far(near_report, far_report)));
        break;
    }
    case RunMode::brute_check:
        detail::brute_check(s, req, out, log);
        break;
    }
}

inline std::string single_line(std::string s)
{
    for (char& c : s)
        if (c == '\n' || c == '\r')
            c = ' ';
    return s;
}

/// Runs a request and maps failures to exit codes with one machine-parsable line on err:
///   risbeam: error code=<n> kind=<kind> message=<text>
inline int run(const RunRequest& req, std::ostream& err)
{
    auto fail = [&](ExitCode code, const char* kind, const std::exception& e) {
        err << "risbeam: error code=" << int(code) << " kind=" << kind << " message=" << single_line(e.what())
            << '\n';
        return int(code);
    };
    try {
        execute(req, err);
        return ExitCode::ok;
    } catch (const UsageError& e) {
        return fail(ExitCode::usage, "usage", e);
    } catch (const ScenarioError& e) {
        return fail(ExitCode::scenario, "scenario", e);
    } catch (const GeometryError& e) {
        return fail(ExitCode::geometry, "geometry", e);
    } catch (const ChannelError& e) {
        return fail(ExitCode::channel, "channel", e);
    } catch (const OptimizerError& e) {
        return fail(ExitCode::optimizer, "optimizer", e);
    } catch (const SweepError& e) {
        return fail(ExitCode::sweep, "sweep", e);
    } catch (const MetricsError& e) {
        return fail(ExitCode::metrics, "metrics", e);
    } catch (const IoError& e) {
        return fail(ExitCode::io, "io", e);
    } catch (const std::exception& e) {
        return fail(ExitCode::internal, "internal", e);
    }
}

} // namespace risbeam::cli
