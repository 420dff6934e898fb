// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crossdip/channel.hpp"
#include "crossdip/geometry.hpp"
#include "crossdip/simulate.hpp"
#include "crossdip/table.hpp"

namespace crossdip::cli {

// Raised for malformed or out-of-range configuration; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an output file cannot be written; maps to exit code 1.
struct IoError : std::runtime_error {
    explicit IoError(const std::filesystem::path& p, const std::string& what)
        : std::runtime_error(what), path(p) {}
    std::filesystem::path path;
};

// Experiment presets. Each reproduces one figure-shaped table; Custom runs a
// user-described sweep.
enum class Preset {
    Fig3PdfTheta,
    Fig5Pdfs,
    Fig6GainStandalone,
    Fig7GainMultipair,
    Fig7RateStandalone,
    Fig8RateMultipair,
    Fig9Sumrate,
    Fig9bSumrateVsPercent,
    Fig10AntennaSelection,
    Fig11Rician,
    Custom,
};

const char* to_string(Preset p);
Preset preset_from_string(const std::string& name); // throws ConfigError

enum class OutputFormat { Csv, Json };

struct ExperimentSpec {
    Preset preset = Preset::Custom;
    geometry::TopologyConfig topology{};
    channel::RadioConfig radio{};
    long trials = 0; // 0 = use the preset default
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = ".";
    OutputFormat format = OutputFormat::Csv;
    int threads = 0; // 0 = all hardware threads

    // Sweep description (Custom preset; the figure presets pin their own).
    std::vector<double> heights_m;
    std::vector<int> aerial_counts;
    simulate::Strategy strategy = simulate::Strategy::CrossDipolePerfect;
    simulate::RateMetric metric = simulate::RateMetric::NetworkSum;
    simulate::SweepAxis axis = simulate::SweepAxis::HeightMeters;
};

// Command-line overrides; these win over both file values and defaults.
struct FlagOverrides {
    std::optional<long> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
};

/// Resolve an experiment: built-in defaults, then the JSON config file (pass
/// an empty string for none), then command-line flags. Unknown keys and
/// out-of-range values raise ConfigError naming the key and the valid range.
ExperimentSpec parse_config(const std::string& preset_name, const std::string& config_json,
                            const FlagOverrides& flags);

/// Run the experiment and write its tables plus a metadata sidecar
/// (<preset>.meta.json: resolved config, seed, version, wall time). Returns
/// the written file paths. Table bytes depend only on spec (not wall time).
std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec);

/// Field-pattern grid for visualization. DipoleZ: rows (theta, field) on an
/// n-point polar grid. DipoleY: rows (theta, phi, field) on an n x n grid.
table::Table pattern_grid(antenna::AntennaKind kind, int n,
                          double phase_length = 1.5707963267948966);

std::string version_string();

} // namespace crossdip::cli
