// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>

namespace crossdip::antenna {

// Transmit antenna options. Ground transmitters carry a cross-dipole (one
// dipole along z, one along y) and excite exactly one of the two; Omni is the
// idealized receive pattern with unit gain in every direction.
enum class AntennaKind { DipoleZ, DipoleY, Omni };

const char* to_string(AntennaKind kind);

/// Half-wave dipole field pattern as a function of the cosine u between the
/// propagation direction and the dipole axis: cos((pi/2) u) / sqrt(1 - u^2),
/// with the analytic limit 0 at |u| = 1. Both orientation-specific patterns
/// below reduce to this.
double field_pattern_from_axis_cosine(double axis_cosine);

/// Normalized field pattern of a half-wave dipole on the z axis,
/// cos((pi/2) cos(theta)) / sin(theta), with the analytic limit 0 at
/// theta in {0, pi}. theta is the polar angle from the dipole axis.
double field_pattern_z(double theta);

/// Normalized field pattern of a half-wave dipole on the y axis. The angle
/// between the propagation direction and the dipole axis has cosine
/// u = sin(theta) sin(phi); the pattern is cos((pi/2) u) / sqrt(1 - u^2)
/// with the analytic limit 0 at |u| = 1.
double field_pattern_y(double theta, double phi);

/// Field pattern of a dipole of arbitrary electrical length,
/// [cos(pl cos(theta)) - cos(pl)] / sin(theta) with pl = pi * length / lambda.
/// pl = pi/2 recovers the half-wave pattern (not normalized for other lengths).
double dipole_field_pattern(double theta, double phase_length);

/// Transmit power gain: squared field pattern for the dipoles, 1 for Omni.
double gain(AntennaKind kind, double theta, double phi);

/// Antenna selection by received preamble power, highest power wins.
/// Ties resolve to DipoleZ so that repeated runs are reproducible.
AntennaKind select_antenna(double preamble_power_z_w, double preamble_power_y_w);

/// Map-based variant; requires finite nonnegative entries for both DipoleZ
/// and DipoleY (extra entries are ignored). Throws std::invalid_argument
/// otherwise.
AntennaKind select_antenna(const std::map<AntennaKind, double>& preamble_power_w);

} // namespace crossdip::antenna
