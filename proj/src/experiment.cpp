// SPDX-License-Identifier: Apache-2.0
#include "crossdip/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>

#include "json.hpp"

#include "crossdip/analytic.hpp"
#include "crossdip/rng.hpp"

namespace crossdip::cli {

namespace {

using nlohmann::json;
using antenna::AntennaKind;
using channel::FadingModel;
using channel::RadioConfig;
using geometry::TopologyConfig;
using simulate::RateCurve;
using simulate::RateMetric;
using simulate::Strategy;

constexpr double kPi = std::numbers::pi;

const std::vector<double> kDefaultHeights{50, 100, 150, 200, 250, 300, 350, 400};
const std::vector<double> kGainHeights{50,  75,  100, 125, 150, 175, 200, 225,
                                       250, 275, 300, 325, 350, 375, 400};
const std::vector<double> kPercentSweepHeights{50, 150, 400};
const std::vector<int> kDefaultAerialCounts{1, 3, 5, 7};
const std::vector<int> kPercentAerialCounts{1, 2, 3, 4, 5, 6, 7, 8, 9};

long preset_default_trials(Preset p) {
    switch (p) {
        case Preset::Fig3PdfTheta:
        case Preset::Fig5Pdfs:
            return 1'000'000; // histogram sample count
        case Preset::Fig6GainStandalone:
        case Preset::Fig7GainMultipair:
            return 1; // no Monte Carlo content
        default:
            return 10'000; // desk-scale smoke runs; acceptance uses 1e5
    }
}

struct PresetName {
    Preset preset;
    const char* name;
};

constexpr PresetName kPresetNames[] = {
    {Preset::Fig3PdfTheta, "fig3-pdf-theta"},
    {Preset::Fig5Pdfs, "fig5-pdfs"},
    {Preset::Fig6GainStandalone, "fig6-gain-standalone"},
    {Preset::Fig7GainMultipair, "fig7-gain-multipair"},
    {Preset::Fig7RateStandalone, "fig7-rate-standalone"},
    {Preset::Fig8RateMultipair, "fig8-rate-multipair"},
    {Preset::Fig9Sumrate, "fig9-sumrate"},
    {Preset::Fig9bSumrateVsPercent, "fig9b-sumrate-vs-percent"},
    {Preset::Fig10AntennaSelection, "fig10-antenna-selection"},
    {Preset::Fig11Rician, "fig11-rician"},
    {Preset::Custom, "custom"},
};

[[noreturn]] void bad_key(const std::string& key, const std::string& detail) {
    throw ConfigError("config key '" + key + "': " + detail);
}

double need_number(const json& v, const std::string& key) {
    if (!v.is_number()) bad_key(key, "expected a number");
    return v.get<double>();
}

long need_integer(const json& v, const std::string& key) {
    if (!v.is_number_integer()) bad_key(key, "expected an integer");
    return v.get<long>();
}

std::uint64_t need_seed(const json& v, const std::string& key) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) {
        return static_cast<std::uint64_t>(v.get<long long>());
    }
    bad_key(key, "expected a nonnegative integer");
}

std::string need_string(const json& v, const std::string& key) {
    if (!v.is_string()) bad_key(key, "expected a string");
    return v.get<std::string>();
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("config key 'format': expected \"csv\" or \"json\" (got \"" + s + "\")");
}

Strategy parse_strategy(const std::string& s) {
    if (s == "all-z") return Strategy::AllZ;
    if (s == "perfect") return Strategy::CrossDipolePerfect;
    if (s == "measured") return Strategy::CrossDipoleMeasured;
    throw ConfigError(
        "config key 'strategy': expected \"all-z\", \"perfect\" or \"measured\" (got \"" + s +
        "\")");
}

void apply_config_json(ExperimentSpec& spec, const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config file: top level must be a JSON object");

    static const std::set<std::string> known{
        "m0",         "m_max",        "h",       "pairs",   "aerial",  "rayleigh_b",
        "tx_power_dbm", "carrier_hz", "bandwidth_hz", "rician_k_db", "fading",
        "trials",     "seed",         "threads", "format",  "out_dir", "heights",
        "aerial_counts", "strategy",  "metric",  "axis"};
    for (const auto& [key, value] : root.items()) {
        if (!known.count(key)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
        if (key == "m0") {
            spec.topology.min_radius_m = need_number(value, key);
        } else if (key == "m_max") {
            spec.topology.max_radius_m = need_number(value, key);
        } else if (key == "h") {
            spec.topology.height_m = need_number(value, key);
        } else if (key == "pairs") {
            spec.topology.pairs = static_cast<int>(need_integer(value, key));
        } else if (key == "aerial") {
            spec.topology.aerial = static_cast<int>(need_integer(value, key));
        } else if (key == "rayleigh_b") {
            spec.topology.rayleigh_b_m = need_number(value, key);
        } else if (key == "tx_power_dbm") {
            spec.radio.tx_power_w = channel::dbm_to_watt(need_number(value, key));
        } else if (key == "carrier_hz") {
            spec.radio.carrier_hz = need_number(value, key);
        } else if (key == "bandwidth_hz") {
            spec.radio.bandwidth_hz = need_number(value, key);
        } else if (key == "rician_k_db") {
            spec.radio.rician_k = std::pow(10.0, need_number(value, key) / 10.0);
        } else if (key == "fading") {
            const std::string s = need_string(value, key);
            if (s == "rayleigh") {
                spec.radio.fading = FadingModel::Rayleigh;
            } else if (s == "rician") {
                spec.radio.fading = FadingModel::Rician;
            } else {
                bad_key(key, "expected \"rayleigh\" or \"rician\" (got \"" + s + "\")");
            }
        } else if (key == "trials") {
            spec.trials = need_integer(value, key);
            if (spec.trials < 1) bad_key(key, "requires trials >= 1");
        } else if (key == "seed") {
            spec.seed = need_seed(value, key);
        } else if (key == "threads") {
            spec.threads = static_cast<int>(need_integer(value, key));
        } else if (key == "format") {
            spec.format = parse_format(need_string(value, key));
        } else if (key == "out_dir") {
            spec.out_dir = need_string(value, key);
        } else if (key == "heights") {
            if (!value.is_array() || value.empty()) bad_key(key, "expected a nonempty array");
            spec.heights_m.clear();
            for (const auto& h : value) spec.heights_m.push_back(need_number(h, key));
        } else if (key == "aerial_counts") {
            if (!value.is_array() || value.empty()) bad_key(key, "expected a nonempty array");
            spec.aerial_counts.clear();
            for (const auto& c : value) {
                spec.aerial_counts.push_back(static_cast<int>(need_integer(c, key)));
            }
        } else if (key == "strategy") {
            spec.strategy = parse_strategy(need_string(value, key));
        } else if (key == "metric") {
            const std::string s = need_string(value, key);
            if (s == "sum") {
                spec.metric = RateMetric::NetworkSum;
            } else if (s == "aerial") {
                spec.metric = RateMetric::AerialMean;
            } else {
                bad_key(key, "expected \"sum\" or \"aerial\" (got \"" + s + "\")");
            }
        } else if (key == "axis") {
            const std::string s = need_string(value, key);
            if (s == "height") {
                spec.axis = simulate::SweepAxis::HeightMeters;
            } else if (s == "percent") {
                spec.axis = simulate::SweepAxis::AerialPercent;
            } else {
                bad_key(key, "expected \"height\" or \"percent\" (got \"" + s + "\")");
            }
        }
    }
}

void check_ranges(const ExperimentSpec& spec) {
    const auto& t = spec.topology;
    if (!(t.min_radius_m > 0.0) || !(t.min_radius_m < t.max_radius_m)) {
        throw ConfigError("config key 'm0': requires 0 < m0 < m_max (got m0=" +
                          table::format_double(t.min_radius_m) +
                          ", m_max=" + table::format_double(t.max_radius_m) + ")");
    }
    if (!(t.height_m > 0.0)) bad_key("h", "requires h > 0");
    if (t.pairs < 1) bad_key("pairs", "requires pairs >= 1");
    if (t.aerial < 0 || t.aerial > t.pairs) {
        bad_key("aerial", "requires 0 <= aerial <= pairs (got aerial=" + std::to_string(t.aerial) +
                              ", pairs=" + std::to_string(t.pairs) + ")");
    }
    if (t.rayleigh_b_m && !(*t.rayleigh_b_m > 0.0)) bad_key("rayleigh_b", "requires rayleigh_b > 0");
    if (!(spec.radio.tx_power_w > 0.0) || !std::isfinite(spec.radio.tx_power_w)) {
        bad_key("tx_power_dbm", "must be finite");
    }
    if (!(spec.radio.carrier_hz > 0.0)) bad_key("carrier_hz", "requires carrier_hz > 0");
    if (!(spec.radio.bandwidth_hz > 0.0)) bad_key("bandwidth_hz", "requires bandwidth_hz > 0");
    if (!(spec.radio.rician_k >= 0.0)) bad_key("rician_k_db", "must be finite");
    if (spec.trials < 1) bad_key("trials", "requires trials >= 1");
    if (spec.threads < 0) bad_key("threads", "requires threads >= 0");
    for (double h : spec.heights_m) {
        if (!(h > 0.0)) bad_key("heights", "every height must be > 0");
    }
    for (int c : spec.aerial_counts) {
        if (c < 0 || c > spec.topology.pairs) {
            bad_key("aerial_counts", "every count must be in [0, pairs]");
        }
    }
}

std::filesystem::path table_path(const ExperimentSpec& spec, const std::string& stem) {
    return spec.out_dir / (stem + (spec.format == OutputFormat::Csv ? ".csv" : ".json"));
}

void emit(const ExperimentSpec& spec, const std::string& stem, const table::Table& t,
          std::vector<std::filesystem::path>& written) {
    const auto path = table_path(spec, stem);
    try {
        table::write_file(path, spec.format == OutputFormat::Csv ? table::to_csv(t)
                                                                 : table::to_json(t));
    } catch (const std::exception& e) {
        throw IoError(path, e.what());
    }
    written.push_back(path);
}

// 4-column histogram table: binned empirical density next to the analytic
// density sampled at the same abscissas.
template <class Pdf>
table::Table histogram_table(std::span<const double> samples, double lo, double hi, int bins,
                             const std::string& x_name, Pdf&& pdf) {
    table::Table t;
    t.columns = {x_name + "_bin_center", "empirical_density", x_name, "analytic_density"};
    std::vector<long> counts(static_cast<std::size_t>(bins), 0);
    const double width = (hi - lo) / bins;
    for (double s : samples) {
        int b = static_cast<int>((s - lo) / width);
        if (b >= 0 && b < bins) ++counts[static_cast<std::size_t>(b)];
    }
    const double norm = 1.0 / (static_cast<double>(samples.size()) * width);
    for (int b = 0; b < bins; ++b) {
        const double center = lo + (b + 0.5) * width;
        t.add_row({center, static_cast<double>(counts[static_cast<std::size_t>(b)]) * norm, center,
                   pdf(center)});
    }
    return t;
}

struct PdfDraws {
    std::vector<double> phi_hat;
    std::vector<double> r_hat;
    std::vector<double> theta;
};

PdfDraws draw_pair_geometry(const TopologyConfig& cfg, long n, std::uint64_t seed) {
    PdfDraws out;
    out.phi_hat.reserve(static_cast<std::size_t>(n));
    out.r_hat.reserve(static_cast<std::size_t>(n));
    out.theta.reserve(static_cast<std::size_t>(n));
    Rng rng = substream(seed, 5);
    std::uniform_real_distribution<double> radius(cfg.min_radius_m, cfg.max_radius_m);
    std::uniform_real_distribution<double> azimuth(0.0, 2.0 * kPi);
    for (long i = 0; i < n; ++i) {
        const geometry::PolarPoint tx{radius(rng), azimuth(rng)};
        const geometry::PolarPoint rx{radius(rng), azimuth(rng)};
        const geometry::LinkGeometry g = geometry::link_geometry(tx, rx, cfg.height_m);
        out.phi_hat.push_back(g.azimuth_gap_rad);
        out.r_hat.push_back(g.ground_range_m);
        out.theta.push_back(g.elevation_rad);
    }
    return out;
}

json topology_json(const TopologyConfig& t, double resolved_b) {
    return json{{"m0", t.min_radius_m},
                {"m_max", t.max_radius_m},
                {"h", t.height_m},
                {"pairs", t.pairs},
                {"aerial", t.aerial},
                {"rayleigh_b", resolved_b},
                {"rayleigh_b_was_fitted", !t.rayleigh_b_m.has_value()}};
}

json radio_json(const RadioConfig& r) {
    return json{{"tx_power_w", r.tx_power_w},
                {"tx_power_dbm", channel::watt_to_dbm(r.tx_power_w)},
                {"carrier_hz", r.carrier_hz},
                {"bandwidth_hz", r.bandwidth_hz},
                {"noise_power_w", r.noise_power_w()},
                {"rician_k", r.rician_k},
                {"fading", channel::to_string(r.fading)}};
}

} // namespace

const char* to_string(Preset p) {
    for (const auto& e : kPresetNames) {
        if (e.preset == p) return e.name;
    }
    return "?";
}

Preset preset_from_string(const std::string& name) {
    for (const auto& e : kPresetNames) {
        if (name == e.name) return e.preset;
    }
    std::string all;
    for (const auto& e : kPresetNames) {
        if (!all.empty()) all += ", ";
        all += e.name;
    }
    throw ConfigError("unknown preset '" + name + "' (valid: " + all + ")");
}

std::string version_string() { return std::string("crossdip ") + CROSSDIP_VERSION; }

ExperimentSpec parse_config(const std::string& preset_name, const std::string& config_json,
                            const FlagOverrides& flags) {
    ExperimentSpec spec;
    spec.preset = preset_from_string(preset_name);

    // Preset topology defaults on top of the table settings; the figures with
    // multiple pairs use the ten-pair network.
    switch (spec.preset) {
        case Preset::Fig8RateMultipair:
        case Preset::Fig9Sumrate:
        case Preset::Fig9bSumrateVsPercent:
        case Preset::Fig10AntennaSelection:
        case Preset::Fig11Rician:
            spec.topology.pairs = 10;
            spec.topology.aerial = spec.preset == Preset::Fig10AntennaSelection ? 5 : 1;
            break;
        default:
            break;
    }

    if (!config_json.empty()) apply_config_json(spec, config_json);

    if (flags.trials) {
        if (*flags.trials < 1) bad_key("trials", "requires trials >= 1");
        spec.trials = *flags.trials;
    }
    if (flags.seed) spec.seed = *flags.seed;
    if (flags.threads) spec.threads = *flags.threads;
    if (flags.out_dir) spec.out_dir = *flags.out_dir;
    if (flags.format) spec.format = parse_format(*flags.format);

    if (spec.trials == 0) spec.trials = preset_default_trials(spec.preset);
    if (spec.heights_m.empty()) {
        switch (spec.preset) {
            case Preset::Fig6GainStandalone:
            case Preset::Fig7GainMultipair:
                spec.heights_m = kGainHeights;
                break;
            case Preset::Fig9bSumrateVsPercent:
            case Preset::Fig11Rician:
                spec.heights_m = kPercentSweepHeights;
                break;
            default:
                spec.heights_m = kDefaultHeights;
                break;
        }
    }
    if (spec.aerial_counts.empty()) {
        const std::vector<int>& base = spec.preset == Preset::Fig9bSumrateVsPercent ||
                                               spec.preset == Preset::Fig11Rician
                                           ? kPercentAerialCounts
                                           : kDefaultAerialCounts;
        for (int c : base) {
            if (c <= spec.topology.pairs) spec.aerial_counts.push_back(c);
        }
    }
    check_ranges(spec);
    return spec;
}

table::Table pattern_grid(AntennaKind kind, int n, double phase_length) {
    if (n < 2) throw ConfigError("pattern grid: needs at least 2 points");
    const bool half_wave = std::abs(phase_length - kPi / 2.0) < 1e-12;
    table::Table t;
    if (kind == AntennaKind::DipoleZ) {
        t.columns = {"theta", "field_magnitude"};
        for (int i = 0; i < n; ++i) {
            const double theta = kPi * i / (n - 1);
            const double f = half_wave ? antenna::field_pattern_z(theta)
                                       : antenna::dipole_field_pattern(theta, phase_length);
            t.add_row({theta, std::abs(f)});
        }
        return t;
    }
    if (kind == AntennaKind::DipoleY) {
        t.columns = {"theta", "phi", "field_magnitude"};
        for (int i = 0; i < n; ++i) {
            const double theta = kPi * i / (n - 1);
            for (int j = 0; j < n; ++j) {
                const double phi = 2.0 * kPi * j / n;
                double f;
                if (half_wave) {
                    f = antenna::field_pattern_y(theta, phi);
                } else {
                    const double u = std::sin(theta) * std::sin(phi);
                    f = antenna::dipole_field_pattern(std::acos(u), phase_length);
                }
                t.add_row({theta, phi, std::abs(f)});
            }
        }
        return t;
    }
    throw ConfigError("pattern grid: antenna must be z or y");
}

std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    check_ranges(spec);
    spec.topology.validate();
    spec.radio.validate();

    std::vector<std::filesystem::path> written;
    const TopologyConfig& topo = spec.topology;
    RadioConfig radio = spec.radio;
    const long trials = spec.trials;
    const std::uint64_t seed = spec.seed;
    const int threads = spec.threads;
    const int pairs = topo.pairs;

    // Resolved once so every consumer sees the same fitted scale.
    const double resolved_b = geometry::resolve_rayleigh_b(topo);
    TopologyConfig topo_b = topo;
    topo_b.rayleigh_b_m = resolved_b;

    switch (spec.preset) {
        case Preset::Fig3PdfTheta: {
            Rng rng = substream(seed, 3);
            std::vector<double> samples;
            samples.reserve(static_cast<std::size_t>(trials));
            for (long i = 0; i < trials; ++i) {
                samples.push_back(geometry::sample_standalone(topo, rng).elevation_rad);
            }
            const double lo = std::atan(topo.min_radius_m / topo.height_m);
            const double hi = std::atan(topo.max_radius_m / topo.height_m);
            emit(spec, "fig3_pdf_theta",
                 histogram_table(samples, lo, hi, 64, "theta",
                                 [&](double x) { return geometry::pdf_theta_standalone(x, topo); }),
                 written);
            break;
        }
        case Preset::Fig5Pdfs: {
            const PdfDraws draws = draw_pair_geometry(topo_b, trials, seed);
            emit(spec, "fig5a_pdf_phi",
                 histogram_table(draws.phi_hat, 0.0, 2.0 * kPi, 64, "phi_hat",
                                 [](double x) { return geometry::pdf_phi_hat(x); }),
                 written);
            emit(spec, "fig5b_pdf_r",
                 histogram_table(draws.r_hat, 0.0, 2.0 * topo.max_radius_m, 64, "r_hat",
                                 [&](double x) { return geometry::pdf_r_hat(x, resolved_b); }),
                 written);
            emit(spec, "fig5c_pdf_theta",
                 histogram_table(draws.theta, 0.0, std::atan(2.0 * topo.max_radius_m / topo.height_m),
                                 64, "theta",
                                 [&](double x) { return geometry::pdf_theta_multipair(x, topo_b); }),
                 written);
            break;
        }
        case Preset::Fig6GainStandalone:
        case Preset::Fig7GainMultipair: {
            const bool standalone = spec.preset == Preset::Fig6GainStandalone;
            table::Table t;
            t.columns = {"h", "gain_z_exact", "gain_z_closed", "gain_y_exact", "gain_y_closed"};
            for (double h : spec.heights_m) {
                TopologyConfig c = topo_b;
                c.height_m = h;
                auto gain = [&](AntennaKind a, analytic::GainMethod m) {
                    return standalone ? analytic::expected_gain_standalone(a, c, radio, m).value
                                      : analytic::expected_gain_multipair(a, c, radio, m).value;
                };
                t.add_row({h,
                           gain(AntennaKind::DipoleZ, analytic::GainMethod::QuadratureExact),
                           gain(AntennaKind::DipoleZ, analytic::GainMethod::TaylorClosedForm),
                           gain(AntennaKind::DipoleY, analytic::GainMethod::QuadratureExact),
                           gain(AntennaKind::DipoleY, analytic::GainMethod::TaylorClosedForm)});
            }
            emit(spec, standalone ? "fig6_gain_standalone" : "fig7_gain_multipair", t, written);
            break;
        }
        case Preset::Fig7RateStandalone: {
            const RateCurve rz = simulate::run_standalone_sweep(
                topo, radio, AntennaKind::DipoleZ, spec.heights_m, trials, seed, threads);
            const RateCurve ry = simulate::run_standalone_sweep(
                topo, radio, AntennaKind::DipoleY, spec.heights_m, trials, seed, threads);
            table::Table rate;
            rate.columns = {"h", "antenna", "rate_mc_mean", "rate_mc_se", "rate_closed"};
            table::Table power;
            power.columns = {"h",
                             "antenna",
                             "desired_power_w",
                             "desired_power_dbm",
                             "interference_power_w",
                             "interference_power_dbm"};
            for (std::size_t i = 0; i < spec.heights_m.size(); ++i) {
                const double h = spec.heights_m[i];
                TopologyConfig c = topo;
                c.height_m = h;
                rate.add_row({h, std::string("dipole-z"), rz.points[i].mean, rz.points[i].std_error,
                              analytic::rate_standalone_z(pairs)});
                rate.add_row({h, std::string("dipole-y"), ry.points[i].mean, ry.points[i].std_error,
                              analytic::rate_standalone_y(pairs, c, radio)});
                for (const auto* cur : {&rz, &ry}) {
                    const auto& pt = cur->points[i];
                    power.add_row({h,
                                   std::string(cur == &rz ? "dipole-z" : "dipole-y"),
                                   pt.desired_power_w,
                                   channel::watt_to_dbm(pt.desired_power_w),
                                   pt.interference_power_w,
                                   channel::watt_to_dbm(pt.interference_power_w)});
                }
            }
            emit(spec, "fig7a_rate_standalone", rate, written);
            emit(spec, "fig7b_power_standalone", power, written);
            break;
        }
        case Preset::Fig8RateMultipair: {
            table::Table t;
            t.columns = {"h", "k_arl", "strategy", "rate_mean", "rate_se", "rate_closed"};
            for (int ka : spec.aerial_counts) {
                TopologyConfig c = topo_b;
                c.aerial = ka;
                const RateCurve curve =
                    simulate::run_multipair_sweep(c, radio, Strategy::CrossDipolePerfect,
                                                  spec.heights_m, RateMetric::AerialMean, trials,
                                                  seed, threads);
                for (const auto& pt : curve.points) {
                    TopologyConfig ch = c;
                    ch.height_m = pt.x;
                    t.add_row({pt.x, static_cast<long>(ka), std::string(to_string(curve.strategy)),
                               pt.mean, pt.std_error,
                               analytic::rate_multipair_aerial(pairs - ka, ka, ch, radio)});
                }
            }
            TopologyConfig c = topo_b;
            c.aerial = 1;
            const RateCurve allz = simulate::run_multipair_sweep(
                c, radio, Strategy::AllZ, spec.heights_m, RateMetric::AerialMean, trials, seed,
                threads);
            for (const auto& pt : allz.points) {
                t.add_row({pt.x, static_cast<long>(1), std::string(to_string(allz.strategy)),
                           pt.mean, pt.std_error, analytic::rate_standalone_z(pairs)});
            }
            emit(spec, "fig8_rate_multipair", t, written);
            break;
        }
        case Preset::Fig9Sumrate: {
            table::Table t;
            t.columns = {"h", "k_arl", "strategy", "sum_rate_mean", "sum_rate_se"};
            for (int ka : spec.aerial_counts) {
                TopologyConfig c = topo_b;
                c.aerial = ka;
                for (Strategy s : {Strategy::CrossDipolePerfect, Strategy::AllZ}) {
                    const RateCurve curve = simulate::run_multipair_sweep(
                        c, radio, s, spec.heights_m, RateMetric::NetworkSum, trials, seed, threads);
                    for (const auto& pt : curve.points) {
                        t.add_row({pt.x, static_cast<long>(ka), std::string(to_string(s)), pt.mean,
                                   pt.std_error});
                    }
                }
            }
            emit(spec, "fig9_sumrate", t, written);
            break;
        }
        case Preset::Fig9bSumrateVsPercent:
        case Preset::Fig11Rician: {
            const bool rician = spec.preset == Preset::Fig11Rician;
            if (rician) radio.fading = FadingModel::Rician;
            table::Table t;
            t.columns = {"h", "k_arl", "aerial_percent", "strategy", "sum_rate_mean", "sum_rate_se"};
            for (double h : spec.heights_m) {
                TopologyConfig c = topo_b;
                c.height_m = h;
                for (Strategy s : {Strategy::CrossDipolePerfect, Strategy::AllZ}) {
                    const RateCurve curve =
                        rician ? simulate::run_rician_sweep(c, radio, s, spec.aerial_counts,
                                                            RateMetric::NetworkSum, trials, seed,
                                                            threads)
                               : simulate::run_multipair_percent_sweep(
                                     c, radio, s, spec.aerial_counts, RateMetric::NetworkSum,
                                     trials, seed, threads);
                    for (std::size_t i = 0; i < curve.points.size(); ++i) {
                        const auto& pt = curve.points[i];
                        t.add_row({h, static_cast<long>(spec.aerial_counts[i]), pt.x,
                                   std::string(to_string(s)), pt.mean, pt.std_error});
                    }
                }
            }
            emit(spec, rician ? "fig11_sumrate_rician" : "fig9b_sumrate_vs_percent", t, written);
            break;
        }
        case Preset::Fig10AntennaSelection: {
            const auto [perfect, measured] =
                simulate::run_measured_selection(topo_b, radio, spec.heights_m, trials, seed,
                                                 threads);
            table::Table t;
            t.columns = {"h", "strategy", "sum_rate_mean", "sum_rate_se", "selection_agreement"};
            for (std::size_t i = 0; i < perfect.points.size(); ++i) {
                t.add_row({perfect.points[i].x, std::string(to_string(perfect.strategy)),
                           perfect.points[i].mean, perfect.points[i].std_error,
                           std::numeric_limits<double>::quiet_NaN()});
                t.add_row({measured.points[i].x, std::string(to_string(measured.strategy)),
                           measured.points[i].mean, measured.points[i].std_error,
                           measured.points[i].selection_agreement});
            }
            emit(spec, "fig10_antenna_selection", t, written);
            break;
        }
        case Preset::Custom: {
            table::Table t;
            const bool by_height = spec.axis == simulate::SweepAxis::HeightMeters;
            t.columns = {by_height ? "h" : "aerial_percent", "strategy", "rate_mean", "rate_se"};
            const RateCurve curve =
                by_height ? simulate::run_multipair_sweep(topo_b, radio, spec.strategy,
                                                          spec.heights_m, spec.metric, trials, seed,
                                                          threads)
                          : simulate::run_multipair_percent_sweep(topo_b, radio, spec.strategy,
                                                                  spec.aerial_counts, spec.metric,
                                                                  trials, seed, threads);
            for (const auto& pt : curve.points) {
                t.add_row({pt.x, std::string(to_string(spec.strategy)), pt.mean, pt.std_error});
            }
            emit(spec, "custom_sweep", t, written);
            break;
        }
    }

    const double wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json meta{{"preset", to_string(spec.preset)},
              {"version", version_string()},
              {"seed", spec.seed},
              {"trials", spec.trials},
              {"threads", spec.threads},
              {"format", spec.format == OutputFormat::Csv ? "csv" : "json"},
              {"topology", topology_json(topo, resolved_b)},
              {"radio", radio_json(radio)},
              {"heights", spec.heights_m},
              {"aerial_counts", spec.aerial_counts},
              {"wall_time_s", wall_s}};
    {
        nlohmann::json files = nlohmann::json::array();
        for (const auto& p : written) files.push_back(p.string());
        meta["files"] = files;
    }
    const auto meta_path = spec.out_dir / (std::string(to_string(spec.preset)) + ".meta.json");
    try {
        table::write_file(meta_path, meta.dump(2) + "\n");
    } catch (const std::exception& e) {
        throw IoError(meta_path, e.what());
    }
    written.push_back(meta_path);
    return written;
}

} // namespace crossdip::cli
