// SPDX-License-Identifier: Apache-2.0
//
// crossdip command line front end.
//
//   crossdip run --preset <name> [--config cfg.json] [--seed N] [--trials N]
//                [--threads N] [--out dir] [--format csv|json]
//   crossdip pattern --antenna z|y [--grid N] [--phase-length RAD] [--out dir]
//   crossdip fit-b [--m0 M] [--mmax M] [--samples N] [--seed N]
//
// Exit codes: 0 success, 1 output I/O failure, 2 bad configuration.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "crossdip/experiment.hpp"
#include "crossdip/geometry.hpp"

namespace {

using namespace crossdip;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cli::ConfigError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string default_out_dir() {
    if (const char* env = std::getenv("CROSSDIP_OUT_DIR")) return env;
    return ".";
}

int cmd_run(const std::string& preset, const std::string& config_path,
            const cli::FlagOverrides& flags, bool list_files) {
    std::string config_text;
    if (!config_path.empty()) config_text = read_file(config_path);
    const cli::ExperimentSpec spec = cli::parse_config(preset, config_text, flags);
    const auto files = cli::run_experiment(spec);
    if (list_files) {
        for (const auto& f : files) std::cout << f.string() << "\n";
    }
    return 0;
}

int cmd_pattern(const std::string& which, int grid, double phase_length,
                const std::string& out_dir, const std::string& format) {
    antenna::AntennaKind kind;
    if (which == "z") {
        kind = antenna::AntennaKind::DipoleZ;
    } else if (which == "y") {
        kind = antenna::AntennaKind::DipoleY;
    } else {
        throw cli::ConfigError("--antenna must be 'z' or 'y' (got '" + which + "')");
    }
    const table::Table t = cli::pattern_grid(kind, grid, phase_length);
    const bool csv = format == "csv";
    if (!csv && format != "json") {
        throw cli::ConfigError("--format must be 'csv' or 'json' (got '" + format + "')");
    }
    const std::filesystem::path path =
        std::filesystem::path(out_dir) / ("pattern_" + which + (csv ? ".csv" : ".json"));
    try {
        table::write_file(path, csv ? table::to_csv(t) : table::to_json(t));
    } catch (const std::exception& e) {
        throw cli::IoError(path, e.what());
    }
    std::cout << path.string() << "\n";
    return 0;
}

int cmd_fit_b(double m0, double mmax, long samples, std::uint64_t seed) {
    geometry::TopologyConfig cfg;
    cfg.min_radius_m = m0;
    cfg.max_radius_m = mmax;
    if (!(m0 > 0.0) || !(m0 < mmax)) {
        throw cli::ConfigError("fit-b: requires 0 < m0 < mmax");
    }
    if (samples < 1) throw cli::ConfigError("fit-b: requires samples >= 1");
    Rng rng = substream(seed, 0);
    std::uniform_real_distribution<double> radius(m0, mmax);
    std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);
    std::vector<double> r_hat;
    r_hat.reserve(static_cast<std::size_t>(samples));
    for (long i = 0; i < samples; ++i) {
        const geometry::PolarPoint tx{radius(rng), azimuth(rng)};
        const geometry::PolarPoint rx{radius(rng), azimuth(rng)};
        r_hat.push_back(geometry::link_geometry(tx, rx, 0.0).ground_range_m);
    }
    std::cout << table::format_double(geometry::fit_rayleigh_b(r_hat)) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{cli::version_string() +
                 " - 3D aerial IoT interference simulator with cross-dipole antenna selection"};
    app.require_subcommand(1);
    app.set_version_flag("--version", cli::version_string());

    // run
    auto* run = app.add_subcommand("run", "Run an experiment preset and write its tables");
    std::string preset;
    std::string config_path;
    bool list_files = false;
    cli::FlagOverrides flags;
    flags.out_dir = default_out_dir();
    long trials_flag = -1;
    std::uint64_t seed_flag = 0;
    bool seed_set = false;
    int threads_flag = -1;
    std::string out_flag;
    std::string format_flag;
    run->add_option("--preset", preset,
                    "Experiment preset (fig3-pdf-theta, fig5-pdfs, fig6-gain-standalone, "
                    "fig7-gain-multipair [the multi-pair analog of the fig6 gain curves], "
                    "fig7-rate-standalone, fig8-rate-multipair, fig9-sumrate, "
                    "fig9b-sumrate-vs-percent, fig10-antenna-selection, fig11-rician, custom)")
        ->required();
    run->add_option("--config", config_path, "JSON config file (keys documented in the README)");
    run->add_option("--trials", trials_flag, "Monte Carlo trials / histogram samples");
    run->add_option("--seed", seed_flag, "Master seed; identical seeds give identical tables")
        ->each([&](const std::string&) { seed_set = true; });
    run->add_option("--threads", threads_flag, "Worker cap (0 = all cores; result is unchanged)");
    run->add_option("--out", out_flag, "Output directory (default: $CROSSDIP_OUT_DIR or '.')");
    run->add_option("--format", format_flag, "Table format: csv (default) or json");
    run->add_flag("--list-files", list_files, "Print the written file paths");

    // pattern
    auto* pattern = app.add_subcommand("pattern", "Emit a sampled antenna field-pattern grid");
    std::string pat_antenna;
    int pat_grid = 181;
    double pat_phase_length = 1.5707963267948966;
    std::string pat_out = default_out_dir();
    std::string pat_format = "csv";
    pattern->add_option("--antenna", pat_antenna, "Dipole orientation: z or y")->required();
    pattern->add_option("--grid", pat_grid, "Grid points per angle (default 181)");
    pattern->add_option("--phase-length", pat_phase_length,
                        "Electrical length pi*len/lambda in radians (default pi/2, half-wave)");
    pattern->add_option("--out", pat_out, "Output directory");
    pattern->add_option("--format", pat_format, "csv or json");

    // fit-b
    auto* fitb = app.add_subcommand("fit-b", "Fit the Rayleigh scale of the pair ground distance");
    double fit_m0 = 10.0;
    double fit_mmax = 100.0;
    long fit_samples = 1'000'000;
    std::uint64_t fit_seed = 1;
    fitb->add_option("--m0", fit_m0, "Minimum annulus radius in meters (default 10)");
    fitb->add_option("--mmax", fit_mmax, "Maximum annulus radius in meters (default 100)");
    fitb->add_option("--samples", fit_samples, "Sample count (default 1e6)");
    fitb->add_option("--seed", fit_seed, "Seed (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // bad flags are configuration errors
    }

    try {
        if (run->parsed()) {
            if (trials_flag >= 0) flags.trials = trials_flag;
            if (seed_set) flags.seed = seed_flag;
            if (threads_flag >= 0) flags.threads = threads_flag;
            if (!out_flag.empty()) flags.out_dir = out_flag;
            if (!format_flag.empty()) flags.format = format_flag;
            return cmd_run(preset, config_path, flags, list_files);
        }
        if (pattern->parsed()) {
            return cmd_pattern(pat_antenna, pat_grid, pat_phase_length, pat_out, pat_format);
        }
        if (fitb->parsed()) {
            return cmd_fit_b(fit_m0, fit_mmax, fit_samples, fit_seed);
        }
    } catch (const cli::IoError& e) {
        std::cerr << "error: " << e.what() << " (" << e.path.string() << ")\n";
        return 1;
    } catch (const cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
