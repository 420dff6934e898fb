// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "crossdip/rng.hpp"

namespace crossdip::geometry {

// Annulus deployment region and network size. Node radii are drawn uniformly
// from [min_radius_m, max_radius_m], azimuths uniformly from [0, 2*pi).
struct TopologyConfig {
    double min_radius_m = 10.0;
    double max_radius_m = 100.0;
    double height_m = 100.0; // altitude of aerial receivers
    int pairs = 5;           // Tx/Rx pairs sharing the band
    int aerial = 1;          // receivers at height_m; the rest sit on the ground

    // Scale of the Rayleigh law fitted to the ground-plane pair distance.
    // Left empty, it is fitted on demand from 1e6 internal samples.
    std::optional<double> rayleigh_b_m{};

    void validate() const; // throws std::invalid_argument naming the field
};

struct PolarPoint {
    double radius_m = 0.0;
    double azimuth_rad = 0.0;
};

enum class ReceiverKind { Ground, Aerial };

// One realized network: pairs are matched by index (tx[i] serves rx[i]).
// The first `aerial` receivers fly at aerial_height_m, the rest are ground.
struct Deployment {
    std::vector<PolarPoint> tx;
    std::vector<PolarPoint> rx;
    std::vector<ReceiverKind> rx_kind;
    double aerial_height_m = 0.0;
    long resample_count = 0; // receiver redraws forced by the 1 m separation floor

    double rx_height(int i) const {
        return rx_kind[static_cast<std::size_t>(i)] == ReceiverKind::Aerial ? aerial_height_m : 0.0;
    }
};

// Relative geometry of one Tx-Rx link.
struct LinkGeometry {
    double ground_range_m = 0.0;  // separation projected on the ground plane
    double azimuth_gap_rad = 0.0; // |azimuth difference|, in [0, 2*pi)
    double elevation_rad = 0.0;   // atan(ground_range / height); pi/2 for ground-ground
    double distance_m = 0.0;      // full 3D separation
};

// Links closer than this are rejected and redrawn while sampling deployments,
// keeping free-space gains finite.
inline constexpr double kMinLinkSeparationM = 1.0;

/// Relative link geometry from polar ground coordinates and receiver height.
LinkGeometry link_geometry(const PolarPoint& tx, const PolarPoint& rx, double rx_height_m);

/// One transmitter draw for the single-receiver layout (receiver pinned at
/// the origin, height cfg.height_m).
LinkGeometry sample_standalone(const TopologyConfig& cfg, Rng& rng);

/// Density of the elevation angle in the single-receiver layout:
/// h (1 + tan^2 theta) / (max_radius - min_radius) on
/// [atan(min_radius/h), atan(max_radius/h)], zero outside.
double pdf_theta_standalone(double theta, const TopologyConfig& cfg);

/// K transmitter and K receiver draws; the first cfg.aerial receivers are
/// aerial. Receivers violating the 1 m separation floor against any
/// transmitter are redrawn (count reported in the result).
Deployment sample_multipair(const TopologyConfig& cfg, Rng& rng);
void sample_multipair_into(Deployment& out, const TopologyConfig& cfg, Rng& rng);

/// Density of the azimuth gap |phi_rx - phi_tx| of two independent uniform
/// azimuths: (2*pi - phi) / (2*pi^2) on [0, 2*pi].
double pdf_phi_hat(double phi_hat);

/// Maximum-likelihood Rayleigh scale for the ground-plane pair distance,
/// sqrt(sum r^2 / (2 n)). Throws std::invalid_argument on an empty sample.
double fit_rayleigh_b(std::span<const double> ground_ranges_m);

/// Rayleigh density with scale b, zero for negative argument.
double pdf_r_hat(double r_hat, double b);

/// Density of the elevation angle seen by an aerial receiver in the
/// multi-pair layout, driven by the fitted Rayleigh pair-distance law:
/// (h^2 tan(theta) / b^2) exp(-h^2 tan^2(theta) / (2 b^2)) sec^2(theta) on
/// [0, atan(2*max_radius/h)], zero outside. Requires rayleigh_b_m set.
double pdf_theta_multipair(double theta, const TopologyConfig& cfg);

/// cfg.rayleigh_b_m if present, otherwise the scale fitted from 1e6
/// internally generated pair distances (fixed internal seed, so the result
/// is a pure function of the annulus radii).
double resolve_rayleigh_b(const TopologyConfig& cfg);

/// Copy of cfg with rayleigh_b_m filled in.
TopologyConfig with_rayleigh_b(TopologyConfig cfg);

} // namespace crossdip::geometry
