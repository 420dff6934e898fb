// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include "crossdip/antenna.hpp"
#include "crossdip/geometry.hpp"
#include "crossdip/rng.hpp"

namespace crossdip::channel {

inline constexpr double kSpeedOfLight = 299'792'458.0; // m/s

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

enum class FadingModel { Rayleigh, Rician };

const char* to_string(FadingModel model);

// Radio parameters. Powers are stored linearly (watts); dBm conversions
// happen once, at configuration time.
struct RadioConfig {
    double tx_power_w = 0.199526231496887960; // 23 dBm
    double carrier_hz = 800e6;
    double bandwidth_hz = 200e3;
    double rician_k = 10.0; // linear power ratio of LoS to scattered component
    FadingModel fading = FadingModel::Rayleigh;

    double wavelength_m() const { return kSpeedOfLight / carrier_hz; }
    // Thermal floor over the configured bandwidth: -174 + 10 log10(B) dBm.
    double noise_power_w() const;

    void validate() const; // throws std::invalid_argument naming the field
};

// One realization of |g|^2 for a (tx, rx) link.
struct LinkGainSample {
    double gain = 0.0; // |g|^2, includes transmit power
    int tx_index = 0;
    int rx_index = 0;
    antenna::AntennaKind tx_antenna = antenna::AntennaKind::DipoleZ;
};

/// Free-space power pathloss (lambda / (4 pi d))^2.
/// Throws std::domain_error for d <= 0; degenerate links are rejected upstream.
double free_space_pathloss(double distance_m, double wavelength_m);

/// Unit-power small-scale fading amplitude. Rayleigh: circularly symmetric
/// complex normal with E{|a|^2} = 1. Rician: sqrt(k/(k+1)) + sqrt(1/(k+1)) a,
/// which keeps E{|.|^2} = 1 for every k; k = +inf degenerates to exactly 1.
std::complex<double> sample_fading(FadingModel model, double kappa, Rng& rng);

/// E{|g|^2} given the link geometry: P * G(theta, phi) * pathloss. Equals the
/// fading average because both fading models have unit power.
double link_gain_mean(const geometry::LinkGeometry& geom, antenna::AntennaKind tx_antenna,
                      const RadioConfig& radio);

/// One fading realization of |g|^2 = P * G * pathloss * |a|^2.
LinkGainSample link_gain(const geometry::LinkGeometry& geom, antenna::AntennaKind tx_antenna,
                         const RadioConfig& radio, Rng& rng, int tx_index = 0, int rx_index = 0);

} // namespace crossdip::channel
