// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "crossdip/antenna.hpp"
#include "crossdip/channel.hpp"
#include "crossdip/geometry.hpp"

namespace crossdip::simulate {

// Transmit antenna assignment policy.
//  AllZ                - every transmitter keeps the z dipole.
//  CrossDipolePerfect  - y dipole toward aerial receivers, z toward ground
//                        (receiver type known).
//  CrossDipoleMeasured - per-trial choice by received preamble power.
enum class Strategy { AllZ, CrossDipolePerfect, CrossDipoleMeasured };

const char* to_string(Strategy s);

enum class SweepAxis { HeightMeters, AerialPercent };
enum class RateMetric { AerialMean, NetworkSum };

struct RatePoint {
    double x = 0.0;
    double mean = 0.0;      // bits/s/Hz
    double std_error = 0.0; // of the mean, from the per-trial variance
    // Extra diagnostics; NaN when the sweep does not produce them.
    double desired_power_w = std::numeric_limits<double>::quiet_NaN();
    double interference_power_w = std::numeric_limits<double>::quiet_NaN();
    double selection_agreement = std::numeric_limits<double>::quiet_NaN();
};

struct RateCurve {
    SweepAxis axis = SweepAxis::HeightMeters;
    std::vector<RatePoint> points;
    Strategy strategy = Strategy::CrossDipolePerfect;
    int pairs = 0;
    int aerial = -1; // -1 when the aerial count is the sweep variable
    long trials = 0;
    std::uint64_t seed = 0;
};

/// Exact per-receiver rates for one fading realization:
/// log2(1 + |g_ii|^2 / (sum_{j != i} |g_ij|^2 + noise)). fading2 holds the
/// squared fading magnitudes |a_ij|^2 in receiver-major order [i*K + j].
std::vector<double> rates_given_fading(const geometry::Deployment& dep,
                                       std::span<const antenna::AntennaKind> tx_antenna,
                                       const channel::RadioConfig& radio,
                                       std::span<const double> fading2);

/// One Monte Carlo trial: draws the K*K fading matrix (receiver-major link
/// order) from rng, then evaluates rates_given_fading. Noise is included.
std::vector<double> trial_rates(const geometry::Deployment& dep,
                                std::span<const antenna::AntennaKind> tx_antenna,
                                const channel::RadioConfig& radio, Rng& rng);

/// Single aerial receiver at the origin, cfg.pairs transmitters in the
/// annulus. The serving transmitter uses desired_antenna, all interferers the
/// z dipole. Per height: fresh positions and fading every trial; records the
/// ergodic rate plus the mean desired and interference power at the receiver.
RateCurve run_standalone_sweep(const geometry::TopologyConfig& cfg,
                               const channel::RadioConfig& radio,
                               antenna::AntennaKind desired_antenna,
                               std::span<const double> heights_m, long trials,
                               std::uint64_t seed, int threads = 0);

/// Full multi-pair network swept over aerial receiver heights at fixed
/// cfg.aerial. metric selects the reported statistic (mean over aerial
/// receivers, or network sum over all pairs).
RateCurve run_multipair_sweep(const geometry::TopologyConfig& cfg,
                              const channel::RadioConfig& radio, Strategy strategy,
                              std::span<const double> heights_m, RateMetric metric, long trials,
                              std::uint64_t seed, int threads = 0);

/// Same network swept over the aerial receiver count at fixed cfg.height_m.
/// The x axis reports the aerial share in percent.
RateCurve run_multipair_percent_sweep(const geometry::TopologyConfig& cfg,
                                      const channel::RadioConfig& radio, Strategy strategy,
                                      std::span<const int> aerial_counts, RateMetric metric,
                                      long trials, std::uint64_t seed, int threads = 0);

/// Rician-fading aerial-count sweep (radio.fading must be Rician; the
/// pipeline itself is fading-agnostic).
RateCurve run_rician_sweep(const geometry::TopologyConfig& cfg, const channel::RadioConfig& radio,
                           Strategy strategy, std::span<const int> aerial_counts, RateMetric metric,
                           long trials, std::uint64_t seed, int threads = 0);

/// Height sweep comparing perfect receiver-type knowledge against
/// preamble-power antenna selection. Both curves share deployments and data
/// fading per trial; the measured curve also reports how often the measured
/// choice agreed with the perfect one.
std::pair<RateCurve, RateCurve> run_measured_selection(const geometry::TopologyConfig& cfg,
                                                       const channel::RadioConfig& radio,
                                                       std::span<const double> heights_m,
                                                       long trials, std::uint64_t seed,
                                                       int threads = 0);

} // namespace crossdip::simulate
