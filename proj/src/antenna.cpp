// SPDX-License-Identifier: Apache-2.0
#include "crossdip/antenna.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crossdip::antenna {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Series branch threshold on |1 - u^2|; the direct quotient is 0/0 at the
// singular directions. In polar terms this switches within ~1e-3 rad of the
// dipole axis.
constexpr double kBranchEps = 1e-6;

} // namespace

const char* to_string(AntennaKind kind) {
    switch (kind) {
        case AntennaKind::DipoleZ: return "dipole-z";
        case AntennaKind::DipoleY: return "dipole-y";
        case AntennaKind::Omni: return "omni";
    }
    return "?";
}

double field_pattern_from_axis_cosine(double axis_cosine) {
    const double u = axis_cosine;
    const double one_minus_u2 = 1.0 - u * u;
    if (one_minus_u2 < kBranchEps) {
        // With v = 1 - |u|: F = sin((pi/2) v) / sqrt(v (2 - v)), expanded to
        // two terms in v.
        const double v = 1.0 - std::abs(u);
        if (v <= 0.0) return 0.0;
        return kHalfPi * std::sqrt(v / (2.0 - v)) *
               (1.0 - std::numbers::pi * std::numbers::pi / 24.0 * v * v);
    }
    return std::cos(kHalfPi * u) / std::sqrt(one_minus_u2);
}

double field_pattern_z(double theta) {
    return field_pattern_from_axis_cosine(std::cos(theta));
}

double field_pattern_y(double theta, double phi) {
    return field_pattern_from_axis_cosine(std::sin(theta) * std::sin(phi));
}

double dipole_field_pattern(double theta, double phase_length) {
    const double s = std::sin(theta);
    if (std::abs(s) < 1e-9) return 0.0; // numerator vanishes at the axis too
    return (std::cos(phase_length * std::cos(theta)) - std::cos(phase_length)) / s;
}

double gain(AntennaKind kind, double theta, double phi) {
    switch (kind) {
        case AntennaKind::DipoleZ: {
            const double f = field_pattern_z(theta);
            return f * f;
        }
        case AntennaKind::DipoleY: {
            const double f = field_pattern_y(theta, phi);
            return f * f;
        }
        case AntennaKind::Omni: return 1.0;
    }
    return 0.0;
}

AntennaKind select_antenna(double preamble_power_z_w, double preamble_power_y_w) {
    return preamble_power_y_w > preamble_power_z_w ? AntennaKind::DipoleY : AntennaKind::DipoleZ;
}

AntennaKind select_antenna(const std::map<AntennaKind, double>& preamble_power_w) {
    const auto z = preamble_power_w.find(AntennaKind::DipoleZ);
    const auto y = preamble_power_w.find(AntennaKind::DipoleY);
    if (z == preamble_power_w.end() || y == preamble_power_w.end()) {
        throw std::invalid_argument(
            "select_antenna: needs preamble powers for both dipole-z and dipole-y");
    }
    for (const auto* it : {&*z, &*y}) {
        if (!std::isfinite(it->second) || it->second < 0.0) {
            throw std::invalid_argument("select_antenna: preamble powers must be finite and >= 0");
        }
    }
    return select_antenna(z->second, y->second);
}

} // namespace crossdip::antenna
