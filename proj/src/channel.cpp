// SPDX-License-Identifier: Apache-2.0
#include "crossdip/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace crossdip::channel {

double dbm_to_watt(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt * 1e3); }

const char* to_string(FadingModel model) {
    return model == FadingModel::Rayleigh ? "rayleigh" : "rician";
}

double RadioConfig::noise_power_w() const {
    return dbm_to_watt(-174.0 + 10.0 * std::log10(bandwidth_hz));
}

void RadioConfig::validate() const {
    if (!(tx_power_w > 0.0)) {
        throw std::invalid_argument("RadioConfig: tx_power_w must be > 0 (got " +
                                    std::to_string(tx_power_w) + ")");
    }
    if (!(carrier_hz > 0.0)) {
        throw std::invalid_argument("RadioConfig: carrier_hz must be > 0 (got " +
                                    std::to_string(carrier_hz) + ")");
    }
    if (!(bandwidth_hz > 0.0)) {
        throw std::invalid_argument("RadioConfig: bandwidth_hz must be > 0 (got " +
                                    std::to_string(bandwidth_hz) + ")");
    }
    if (!(rician_k >= 0.0)) {
        throw std::invalid_argument("RadioConfig: rician_k must be >= 0 (got " +
                                    std::to_string(rician_k) + ")");
    }
}

double free_space_pathloss(double distance_m, double wavelength_m) {
    if (!(distance_m > 0.0)) {
        throw std::domain_error("free_space_pathloss: distance must be > 0 (got " +
                                std::to_string(distance_m) + " m)");
    }
    const double x = wavelength_m / (4.0 * std::numbers::pi * distance_m);
    return x * x;
}

std::complex<double> sample_fading(FadingModel model, double kappa, Rng& rng) {
    // Per-component sigma 1/sqrt(2) makes E{|a|^2} = 1.
    std::normal_distribution<double> component(0.0, std::numbers::sqrt2 / 2.0);
    const std::complex<double> scattered{component(rng), component(rng)};
    if (model == FadingModel::Rayleigh) return scattered;
    if (!(kappa >= 0.0)) {
        throw std::invalid_argument("sample_fading: Rician kappa must be >= 0");
    }
    if (std::isinf(kappa)) return {1.0, 0.0}; // pure line-of-sight limit
    return std::sqrt(kappa / (kappa + 1.0)) + std::sqrt(1.0 / (kappa + 1.0)) * scattered;
}

double link_gain_mean(const geometry::LinkGeometry& geom, antenna::AntennaKind tx_antenna,
                      const RadioConfig& radio) {
    const double g = antenna::gain(tx_antenna, geom.elevation_rad, geom.azimuth_gap_rad);
    return radio.tx_power_w * g * free_space_pathloss(geom.distance_m, radio.wavelength_m());
}

LinkGainSample link_gain(const geometry::LinkGeometry& geom, antenna::AntennaKind tx_antenna,
                         const RadioConfig& radio, Rng& rng, int tx_index, int rx_index) {
    const double mean = link_gain_mean(geom, tx_antenna, radio);
    const double f2 = std::norm(sample_fading(radio.fading, radio.rician_k, rng));
    return LinkGainSample{mean * f2, tx_index, rx_index, tx_antenna};
}

} // namespace crossdip::channel
