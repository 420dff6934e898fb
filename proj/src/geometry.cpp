// SPDX-License-Identifier: Apache-2.0
#include "crossdip/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace crossdip::geometry {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Seed material for the internal Rayleigh fit; fixed so that the lazily
// fitted scale is a pure function of the annulus radii.
constexpr std::uint64_t kInternalFitSeed = 0x5ca1ab1e0ddba11ULL;
constexpr long kInternalFitSamples = 1'000'000;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

} // namespace

void TopologyConfig::validate() const {
    if (!(min_radius_m > 0.0) || !(min_radius_m < max_radius_m)) {
        fail("TopologyConfig: requires 0 < min_radius_m < max_radius_m (got min_radius_m=" +
             std::to_string(min_radius_m) + ", max_radius_m=" + std::to_string(max_radius_m) + ")");
    }
    if (!(height_m > 0.0)) {
        fail("TopologyConfig: requires height_m > 0 (got " + std::to_string(height_m) + ")");
    }
    if (pairs < 1) {
        fail("TopologyConfig: requires pairs >= 1 (got " + std::to_string(pairs) + ")");
    }
    if (aerial < 0 || aerial > pairs) {
        fail("TopologyConfig: requires 0 <= aerial <= pairs (got aerial=" + std::to_string(aerial) +
             ", pairs=" + std::to_string(pairs) + ")");
    }
    if (rayleigh_b_m && !(*rayleigh_b_m > 0.0)) {
        fail("TopologyConfig: rayleigh_b_m must be > 0 when set (got " +
             std::to_string(*rayleigh_b_m) + ")");
    }
}

LinkGeometry link_geometry(const PolarPoint& tx, const PolarPoint& rx, double rx_height_m) {
    LinkGeometry out;
    out.azimuth_gap_rad = std::abs(rx.azimuth_rad - tx.azimuth_rad);
    const double cross = 2.0 * tx.radius_m * rx.radius_m * std::cos(out.azimuth_gap_rad);
    const double r2 = tx.radius_m * tx.radius_m + rx.radius_m * rx.radius_m - cross;
    out.ground_range_m = std::sqrt(std::max(r2, 0.0));
    if (rx_height_m > 0.0) {
        out.elevation_rad = std::atan(out.ground_range_m / rx_height_m);
        out.distance_m = std::sqrt(out.ground_range_m * out.ground_range_m + rx_height_m * rx_height_m);
    } else {
        out.elevation_rad = std::numbers::pi / 2.0;
        out.distance_m = out.ground_range_m;
    }
    return out;
}

LinkGeometry sample_standalone(const TopologyConfig& cfg, Rng& rng) {
    cfg.validate();
    std::uniform_real_distribution<double> radius(cfg.min_radius_m, cfg.max_radius_m);
    std::uniform_real_distribution<double> azimuth(0.0, kTwoPi);
    const double r = radius(rng);
    const double phi = azimuth(rng);
    LinkGeometry out;
    out.ground_range_m = r;
    out.azimuth_gap_rad = phi;
    out.elevation_rad = std::atan(r / cfg.height_m);
    out.distance_m = std::sqrt(r * r + cfg.height_m * cfg.height_m);
    return out;
}

double pdf_theta_standalone(double theta, const TopologyConfig& cfg) {
    const double lo = std::atan(cfg.min_radius_m / cfg.height_m);
    const double hi = std::atan(cfg.max_radius_m / cfg.height_m);
    if (theta < lo || theta > hi) return 0.0;
    const double t = std::tan(theta);
    return cfg.height_m * (t * t + 1.0) / (cfg.max_radius_m - cfg.min_radius_m);
}

void sample_multipair_into(Deployment& out, const TopologyConfig& cfg, Rng& rng) {
    cfg.validate();
    const int k = cfg.pairs;
    out.tx.resize(static_cast<std::size_t>(k));
    out.rx.resize(static_cast<std::size_t>(k));
    out.rx_kind.resize(static_cast<std::size_t>(k));
    out.aerial_height_m = cfg.height_m;
    out.resample_count = 0;

    std::uniform_real_distribution<double> radius(cfg.min_radius_m, cfg.max_radius_m);
    std::uniform_real_distribution<double> azimuth(0.0, kTwoPi);
    for (int i = 0; i < k; ++i) {
        out.tx[static_cast<std::size_t>(i)] = {radius(rng), azimuth(rng)};
    }
    for (int i = 0; i < k; ++i) {
        const bool is_aerial = i < cfg.aerial;
        out.rx_kind[static_cast<std::size_t>(i)] =
            is_aerial ? ReceiverKind::Aerial : ReceiverKind::Ground;
        const double z = is_aerial ? cfg.height_m : 0.0;
        // Redraw this receiver until it clears the separation floor against
        // every transmitter. Violations are rare for sane annuli, so the
        // position law is only negligibly perturbed.
        for (long attempt = 0;; ++attempt) {
            if (attempt > 100000) {
                throw std::runtime_error(
                    "sample_multipair: cannot satisfy the minimum link separation");
            }
            const PolarPoint candidate{radius(rng), azimuth(rng)};
            bool ok = true;
            for (int j = 0; j < k; ++j) {
                const LinkGeometry g = link_geometry(out.tx[static_cast<std::size_t>(j)], candidate, z);
                if (g.distance_m < kMinLinkSeparationM) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                out.rx[static_cast<std::size_t>(i)] = candidate;
                break;
            }
            ++out.resample_count;
        }
    }
}

Deployment sample_multipair(const TopologyConfig& cfg, Rng& rng) {
    Deployment out;
    sample_multipair_into(out, cfg, rng);
    return out;
}

double pdf_phi_hat(double phi_hat) {
    if (phi_hat < 0.0 || phi_hat > kTwoPi) return 0.0;
    return (kTwoPi - phi_hat) / (2.0 * std::numbers::pi * std::numbers::pi);
}

double fit_rayleigh_b(std::span<const double> ground_ranges_m) {
    if (ground_ranges_m.empty()) {
        throw std::invalid_argument("fit_rayleigh_b: empty sample");
    }
    double sum_sq = 0.0;
    for (double r : ground_ranges_m) sum_sq += r * r;
    return std::sqrt(sum_sq / (2.0 * static_cast<double>(ground_ranges_m.size())));
}

double pdf_r_hat(double r_hat, double b) {
    if (r_hat < 0.0) return 0.0;
    const double b2 = b * b;
    return r_hat / b2 * std::exp(-r_hat * r_hat / (2.0 * b2));
}

double pdf_theta_multipair(double theta, const TopologyConfig& cfg) {
    cfg.validate();
    if (!cfg.rayleigh_b_m) {
        throw std::invalid_argument("pdf_theta_multipair: rayleigh_b_m not set; "
                                    "resolve it first (see with_rayleigh_b)");
    }
    const double hi = std::atan(2.0 * cfg.max_radius_m / cfg.height_m);
    if (theta <= 0.0 || theta > hi) return 0.0;
    const double b2 = *cfg.rayleigh_b_m * *cfg.rayleigh_b_m;
    const double h = cfg.height_m;
    const double t = std::tan(theta);
    const double c = std::cos(theta);
    return h * h * t / b2 * std::exp(-h * h * t * t / (2.0 * b2)) / (c * c);
}

double resolve_rayleigh_b(const TopologyConfig& cfg) {
    cfg.validate();
    if (cfg.rayleigh_b_m) return *cfg.rayleigh_b_m;
    Rng rng = substream(kInternalFitSeed, 0);
    std::uniform_real_distribution<double> radius(cfg.min_radius_m, cfg.max_radius_m);
    std::uniform_real_distribution<double> azimuth(0.0, kTwoPi);
    double sum_sq = 0.0;
    for (long n = 0; n < kInternalFitSamples; ++n) {
        const PolarPoint tx{radius(rng), azimuth(rng)};
        const PolarPoint rx{radius(rng), azimuth(rng)};
        const double r = link_geometry(tx, rx, 0.0).ground_range_m;
        sum_sq += r * r;
    }
    return std::sqrt(sum_sq / (2.0 * static_cast<double>(kInternalFitSamples)));
}

TopologyConfig with_rayleigh_b(TopologyConfig cfg) {
    cfg.rayleigh_b_m = resolve_rayleigh_b(cfg);
    return cfg;
}

} // namespace crossdip::geometry
