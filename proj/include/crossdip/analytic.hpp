// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include "crossdip/antenna.hpp"
#include "crossdip/channel.hpp"
#include "crossdip/geometry.hpp"

namespace crossdip::analytic {

/// Dawson integral D(x) = exp(-x^2) * int_0^x exp(t^2) dt.
double dawson(double x);

/// Imaginary error function erfi(x) = (2/sqrt(pi)) int_0^x exp(t^2) dt,
/// evaluated as (2/sqrt(pi)) exp(x^2) D(x). Throws std::domain_error for
/// |x| > 30; overflows to +/-inf past |x| ~ 26.6.
double erfi(double x);

/// erfi on the real or imaginary axis (erfi(iy) = i erf(y)). Arguments off
/// both axes never arise here and throw std::invalid_argument.
std::complex<double> erfi(std::complex<double> z);

enum class GainMethod { QuadratureExact, TaylorClosedForm };
enum class Scenario { Standalone, MultiPair };

struct GainExpectation {
    double value = 0.0; // E{|g|^2}, transmit power included
    GainMethod method = GainMethod::QuadratureExact;
    Scenario scenario = Scenario::Standalone;
    antenna::AntennaKind antenna = antenna::AntennaKind::DipoleZ;
};

/// Mean channel gain toward the origin-mounted aerial receiver, averaged over
/// the transmitter position law. QuadratureExact integrates the full pattern;
/// TaylorClosedForm evaluates the small-angle closed forms (tight as the
/// receiver height grows). Antenna must be DipoleZ or DipoleY.
GainExpectation expected_gain_standalone(antenna::AntennaKind which,
                                         const geometry::TopologyConfig& cfg,
                                         const channel::RadioConfig& radio, GainMethod method);

/// Mean channel gain for a randomly placed pair with an aerial receiver,
/// averaged with the fitted Rayleigh pair-distance law. The closed forms are
/// erfi-based antiderivatives; TaylorClosedForm evaluates them with the
/// scale factor folded in, which stays accurate even where the bare erf
/// differences would saturate (see multipair_closed_form_complex for the
/// unfolded original).
GainExpectation expected_gain_multipair(antenna::AntennaKind which,
                                        const geometry::TopologyConfig& cfg,
                                        const channel::RadioConfig& radio, GainMethod method);

/// The erfi antiderivative combination assembled verbatim in complex
/// arithmetic. The value is real up to rounding; its imaginary part must
/// stay below 1e-9 relative (checked by the test suites). Numerically
/// trustworthy for moderate heights (erf saturation erodes it roughly past
/// ten range scales); expected_gain_multipair evaluates the equivalent
/// folded form everywhere instead.
std::complex<double> multipair_closed_form_complex(antenna::AntennaKind which,
                                                   const geometry::TopologyConfig& cfg,
                                                   const channel::RadioConfig& radio);

/// Jensen-style rate approximation log2(1 + zeta_desired / (n * zeta_interferer))
/// shared by all the closed-form rate expressions below.
double rate_from_gains(double zeta_desired, double zeta_interferer, int interferer_count);

/// Approximate rate of the origin aerial receiver when every transmitter uses
/// the z dipole: log2(1 + 1/(K-1)). Height cancels. Requires pairs >= 2.
double rate_standalone_z(int pairs);

/// Same receiver when its own transmitter switches to the y dipole:
/// log2(1 + zeta_y / ((K-1) zeta_z)). Requires pairs >= 2.
double rate_standalone_y(int pairs, const geometry::TopologyConfig& cfg,
                         const channel::RadioConfig& radio,
                         GainMethod method = GainMethod::TaylorClosedForm);

/// Approximate per-aerial-receiver rate in the multi-pair layout under the
/// cross-dipole assignment: log2(1 + zeta_y / (K_grd zeta_z + (K_arl-1) zeta_y)).
/// Requires ground + aerial >= 2 and aerial >= 1.
double rate_multipair_aerial(int ground, int aerial, const geometry::TopologyConfig& cfg,
                             const channel::RadioConfig& radio,
                             GainMethod method = GainMethod::TaylorClosedForm);

} // namespace crossdip::analytic
