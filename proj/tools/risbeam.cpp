#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "risbeam/cli.hpp"

int main(int argc, char** argv)
{
    using namespace risbeam;
    cli::RunRequest req;

    CLI::App app{"risbeam: binary-phase RIS beam steering simulator"};
    app.footer(std::string("Modes: target-sweep, rx-sweep, optimize-single, compare-near-far, brute-check.\n"
                           "Presets: area1_near, area1_far, area2_near, area2_far.\n") +
               cli::kExitCodeHelp);

    std::string mode;
    std::string out;
    int workers = 0;
    std::string config;
    std::string scenario2;
    std::string pgm_range;

    app.add_option("--scenario", req.scenario, "Scenario file or bundled preset name")->required();
    auto* mode_opt = app.add_option("--mode", mode, "Run mode (defaults to the scenario's run.mode)");
    auto* out_opt = app.add_option("--out", out, "Output directory (defaults to run.out_dir)");
    auto* workers_opt = app.add_option("--workers", workers, "Worker threads (defaults to run.workers)");
    auto* config_opt = app.add_option("--config", config, "Switch-state bitmap for rx-sweep");
    auto* scenario2_opt = app.add_option("--scenario2", scenario2, "Far scenario for compare-near-far");
    auto* range_opt = app.add_option("--pgm-range", pgm_range, "PGM dBm range as MIN,MAX (default: data range)");
    app.add_option("--seed", req.seed, "Seed for brute-check random targets");
    app.add_option("--trials", req.trials, "Random targets for brute-check in addition to the receiver");

    try {
        app.parse(argc, argv);
        if (*mode_opt) {
            req.mode = parse_run_mode(mode);
            if (!req.mode)
                throw CLI::ValidationError("--mode", "unknown mode '" + mode + "'");
        }
        if (*out_opt)
            req.out_dir = out;
        if (*workers_opt)
            req.workers = workers;
        if (*config_opt)
            req.config_path = config;
        if (*scenario2_opt)
            req.scenario2 = scenario2;
        if (*range_opt) {
            const auto comma = pgm_range.find(',');
            if (comma == std::string::npos)
                throw CLI::ValidationError("--pgm-range", "expected MIN,MAX");
            req.pgm_range = std::pair{std::stod(pgm_range.substr(0, comma)), std::stod(pgm_range.substr(comma + 1))};
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "risbeam: error code=" << int(cli::ExitCode::usage) << " kind=usage message="
                  << cli::single_line(e.what()) << '\n';
        return cli::ExitCode::usage;
    } catch (const std::exception& e) {
        std::cerr << "risbeam: error code=" << int(cli::ExitCode::usage) << " kind=usage message="
                  << cli::single_line(e.what()) << '\n';
        return cli::ExitCode::usage;
    }

    return cli::run(req, std::cerr);
}
