// SPDX-License-Identifier: Apache-2.0
#include "crossdip/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "crossdip/quadrature.hpp"

namespace crossdip::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// |k2| below this and the erfi antiderivatives are evaluated by their series
// in k2; the evaluation branches overlap with ample accuracy around the
// threshold.
constexpr double kClosedFormSeriesK2 = 1e-4;

double k1_factor(const channel::RadioConfig& radio) {
    const double lambda = radio.wavelength_m();
    return radio.tx_power_w * lambda * lambda / (16.0 * kPi * kPi);
}

void require_dipole(antenna::AntennaKind which, const char* where) {
    if (which == antenna::AntennaKind::Omni) {
        throw std::invalid_argument(std::string(where) + ": antenna must be dipole-z or dipole-y");
    }
}

double pattern_gain_z(double theta) {
    const double f = antenna::field_pattern_z(theta);
    return f * f;
}

double pattern_gain_y(double theta, double phi) {
    const double f = antenna::field_pattern_y(theta, phi);
    return f * f;
}

// Geometry-derived constants of the multi-pair gain expressions.
struct MultipairTerms {
    double k1;
    double b;     // fitted Rayleigh scale
    double k2;    // -h^2 / (2 b^2)
    double upper; // atan(2 max_radius / h)
};

MultipairTerms multipair_terms(const geometry::TopologyConfig& cfg,
                               const channel::RadioConfig& radio) {
    const double b = geometry::resolve_rayleigh_b(cfg);
    return MultipairTerms{
        k1_factor(radio),
        b,
        -cfg.height_m * cfg.height_m / (2.0 * b * b),
        std::atan(2.0 * cfg.max_radius_m / cfg.height_m),
    };
}

using cplx = std::complex<double>;

// Antiderivative combination shared by both closed forms:
// sqrt(6 pi k2) erfi(sqrt(k2)(4 t^2 + 3)/(2 sqrt(6))) - 4 exp(k2 (4 t^2 + 3)^2 / 24).
cplx closed_bracket(double theta, cplx k2) {
    const double s = 4.0 * theta * theta + 3.0;
    const cplx arg = std::sqrt(k2) * (s / (2.0 * std::sqrt(6.0)));
    return std::sqrt(6.0 * kPi * k2) * erfi(arg) - 4.0 * std::exp(k2 * (s * s / 24.0));
}

cplx erfi_at(double theta, cplx k2) {
    const double s = 4.0 * theta * theta + 3.0;
    return erfi(std::sqrt(k2) * (s / (2.0 * std::sqrt(6.0))));
}

// Scaled complementary error function exp(x^2) erfc(x) for x >= 0. The
// direct product is accurate until erfc underflows near x ~ 26.6, far past
// any argument the closed forms produce on sane geometries.
double erfcx_positive(double x) {
    return std::exp(x * x) * std::erfc(x);
}

// e^{-3 k2 / 8} [bracket(upper) - bracket(0)] evaluated without the
// saturating erf differences: with k2 < 0 and y(s) = sqrt(-k2) s / (2 sqrt 6),
// the prefactor equals e^{y(3)^2}, which folds into erfcx terms, and the
// exponential pair collapses to expm1 of the bounded Taylor exponent.
// Algebraically identical to the complex bracket; stable for any k2 < 0.
double scaled_bracket_diff(double upper, double k2) {
    const double s_upper = 4.0 * upper * upper + 3.0;
    const double y0 = std::sqrt(-k2) * 3.0 / (2.0 * std::sqrt(6.0));
    const double y1 = std::sqrt(-k2) * s_upper / (2.0 * std::sqrt(6.0));
    const double erf_part =
        erfcx_positive(y0) - std::exp(y0 * y0 - y1 * y1) * erfcx_positive(y1);
    const double u2 = upper * upper;
    const double exp_part = -4.0 * std::expm1(k2 * (u2 + 2.0 / 3.0 * u2 * u2));
    return -std::sqrt(6.0 * kPi * (-k2)) * erf_part + exp_part;
}

// e^{-3 k2 / 8} [erfi(z(upper)) - erfi(z(0))] / sqrt(k2), same treatment for
// the bare erfi difference of the y-dipole form.
double scaled_erfi_diff(double upper, double k2) {
    const double s_upper = 4.0 * upper * upper + 3.0;
    const double y0 = std::sqrt(-k2) * 3.0 / (2.0 * std::sqrt(6.0));
    const double y1 = std::sqrt(-k2) * s_upper / (2.0 * std::sqrt(6.0));
    const double erf_part =
        erfcx_positive(y0) - std::exp(y0 * y0 - y1 * y1) * erfcx_positive(y1);
    return erf_part / std::sqrt(-k2);
}

// Series of [bracket(L) - bracket(0)] / k2 about k2 = 0; used where the
// closed form becomes a removable 0/0 limit.
double bracket_diff_over_k2_series(double upper, double k2) {
    const double s = 4.0 * upper * upper + 3.0;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s, s6 = s5 * s;
    const double order0 = (s - 3.0) - (s2 - 9.0) / 6.0;
    const double order1 = (s3 - 27.0) / 72.0 - (s4 - 81.0) / 288.0;
    const double order2 = (s5 - 243.0) / 5760.0 - (s6 - 729.0) / 20736.0;
    return order0 + k2 * (order1 + k2 * order2);
}

double erfi_term_series(double upper, double k2) {
    const double s = 4.0 * upper * upper + 3.0;
    const double s3 = s * s * s, s5 = s3 * s * s;
    return 2.0 * upper * upper + k2 * (s3 - 27.0) / 144.0 + k2 * k2 * (s5 - 243.0) / 11520.0;
}

double multipair_quadrature(antenna::AntennaKind which, const MultipairTerms& mt) {
    const double b2 = mt.b * mt.b;
    const auto radial_weight = [&](double t) {
        const double tan_t = std::tan(t);
        return tan_t * std::exp(mt.k2 * tan_t * tan_t);
    };
    if (which == antenna::AntennaKind::DipoleZ) {
        return mt.k1 / b2 * quadrature::integrate(
            [&](double t) { return pattern_gain_z(t) * radial_weight(t); }, 0.0, mt.upper);
    }
    quadrature::Options inner{1e-10, 1e-16, 4000};
    const double outer = quadrature::integrate(
        [&](double t) {
            const double azimuth_avg = quadrature::integrate(
                [&](double p) { return pattern_gain_y(t, p) * (kTwoPi - p); }, 0.0, kTwoPi, inner);
            return azimuth_avg * radial_weight(t);
        },
        0.0, mt.upper);
    return mt.k1 / (2.0 * kPi * kPi * b2) * outer;
}

cplx multipair_closed_complex(antenna::AntennaKind which, const MultipairTerms& mt) {
    const double b2 = mt.b * mt.b;
    const cplx k2c{mt.k2, 0.0};
    const double lead = std::exp(-3.0 * mt.k2 / 8.0);
    const cplx bracket_diff = closed_bracket(mt.upper, k2c) - closed_bracket(0.0, k2c);
    if (which == antenna::AntennaKind::DipoleZ) {
        const cplx coeff = -3.0 * kPi * kPi * mt.k1 * lead / (512.0 * b2 * mt.k2);
        return coeff * bracket_diff;
    }
    const cplx coeff1 = -3.0 * mt.k1 * lead / (64.0 * kPi * kPi * b2 * mt.k2) *
                        (5.0 * kPi * kPi / 3.0 - kPi * kPi * kPi * kPi / 4.0);
    const cplx coeff2 = mt.k1 * lead / (4.0 * b2 * std::sqrt(k2c)) * std::sqrt(3.0 * kPi / 2.0);
    const cplx erfi_diff = erfi_at(mt.upper, k2c) - erfi_at(0.0, k2c);
    return coeff1 * bracket_diff + coeff2 * erfi_diff;
}

double multipair_closed_real(antenna::AntennaKind which, const MultipairTerms& mt) {
    const double b2 = mt.b * mt.b;
    if (std::abs(mt.k2) < kClosedFormSeriesK2) {
        const double lead = std::exp(-3.0 * mt.k2 / 8.0);
        const double diff = bracket_diff_over_k2_series(mt.upper, mt.k2);
        if (which == antenna::AntennaKind::DipoleZ) {
            return -3.0 * kPi * kPi * mt.k1 * lead / (512.0 * b2) * diff;
        }
        const double term1 = -3.0 * mt.k1 * lead / (64.0 * kPi * kPi * b2) *
                             (5.0 * kPi * kPi / 3.0 - kPi * kPi * kPi * kPi / 4.0) * diff;
        const double term2 = mt.k1 * lead / (4.0 * b2) * erfi_term_series(mt.upper, mt.k2);
        return term1 + term2;
    }
    // Exponent-factored evaluation of the same antiderivatives. The plain
    // complex form subtracts saturating erf values once -k2 grows (receiver
    // far above the fitted range scale) and would round its value away.
    const double diff = scaled_bracket_diff(mt.upper, mt.k2);
    if (which == antenna::AntennaKind::DipoleZ) {
        return -3.0 * kPi * kPi * mt.k1 / (512.0 * b2 * mt.k2) * diff;
    }
    const double term1 = -3.0 * mt.k1 / (64.0 * kPi * kPi * b2 * mt.k2) *
                         (5.0 * kPi * kPi / 3.0 - kPi * kPi * kPi * kPi / 4.0) * diff;
    const double term2 = mt.k1 * std::sqrt(3.0 * kPi / 2.0) / (4.0 * b2) *
                         scaled_erfi_diff(mt.upper, mt.k2);
    return term1 + term2;
}

} // namespace

double dawson(double x) {
    const double ax = std::abs(x);
    double value;
    if (ax < 0.2) {
        // Maclaurin series; alternating with rapidly shrinking terms here.
        const double x2 = ax * ax;
        double term = ax;
        double sum = ax;
        for (int k = 0; k < 16; ++k) {
            term *= -2.0 * x2 / (2.0 * k + 3.0);
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        }
        value = sum;
    } else {
        // Rybicki's sampling form: D(x) = lim (1/sqrt(pi)) sum_{n odd} e^{-(x-nh)^2}/n.
        // h = 0.2 leaves the discretization error far below double precision.
        constexpr double h = 0.2;
        int n0 = 2 * static_cast<int>(std::lround(0.5 * (ax / h - 1.0))) + 1;
        if (n0 < 1) n0 = 1;
        const double xp = ax - static_cast<double>(n0) * h;
        double sum = 0.0;
        for (int k = -17; k <= 17; ++k) {
            const double d = xp - 2.0 * static_cast<double>(k) * h;
            sum += std::exp(-d * d) / static_cast<double>(n0 + 2 * k);
        }
        value = sum / std::sqrt(kPi);
    }
    return x < 0.0 ? -value : value;
}

double erfi(double x) {
    if (std::abs(x) > 30.0) {
        throw std::domain_error("erfi: argument magnitude exceeds the 30.0 saturation point");
    }
    return 2.0 / std::sqrt(kPi) * std::exp(x * x) * dawson(x);
}

std::complex<double> erfi(std::complex<double> z) {
    if (z.imag() == 0.0) return {erfi(z.real()), 0.0};
    if (z.real() == 0.0) return {0.0, std::erf(z.imag())};
    throw std::invalid_argument("erfi: only real or purely imaginary arguments are supported");
}

GainExpectation expected_gain_standalone(antenna::AntennaKind which,
                                         const geometry::TopologyConfig& cfg,
                                         const channel::RadioConfig& radio, GainMethod method) {
    cfg.validate();
    radio.validate();
    require_dipole(which, "expected_gain_standalone");

    const double h = cfg.height_m;
    const double width = cfg.max_radius_m - cfg.min_radius_m;
    const double lo = std::atan(cfg.min_radius_m / h);
    const double hi = std::atan(cfg.max_radius_m / h);
    const double k1 = k1_factor(radio);

    double value = 0.0;
    if (method == GainMethod::QuadratureExact) {
        if (which == antenna::AntennaKind::DipoleZ) {
            value = k1 / (width * h) *
                    quadrature::integrate([](double t) { return pattern_gain_z(t); }, lo, hi);
        } else {
            quadrature::Options inner{1e-10, 1e-16, 4000};
            value = k1 / (kTwoPi * h * width) *
                    quadrature::integrate(
                        [&](double t) {
                            return quadrature::integrate(
                                [&](double p) { return pattern_gain_y(t, p); }, 0.0, kTwoPi, inner);
                        },
                        lo, hi);
        }
    } else {
        // Small-angle closed forms; atan^3 differences carry the geometry.
        const double cube_diff = hi * hi * hi - lo * lo * lo;
        if (which == antenna::AntennaKind::DipoleZ) {
            value = kPi * kPi * k1 * cube_diff / (48.0 * width * h);
        } else {
            value = k1 / (kTwoPi * h * width) *
                    ((4.0 * kPi - kPi * kPi * kPi) * cube_diff / 12.0 + kTwoPi * (hi - lo));
        }
    }
    return GainExpectation{value, method, Scenario::Standalone, which};
}

GainExpectation expected_gain_multipair(antenna::AntennaKind which,
                                        const geometry::TopologyConfig& cfg,
                                        const channel::RadioConfig& radio, GainMethod method) {
    cfg.validate();
    radio.validate();
    require_dipole(which, "expected_gain_multipair");
    const MultipairTerms mt = multipair_terms(cfg, radio);
    const double value = method == GainMethod::QuadratureExact ? multipair_quadrature(which, mt)
                                                               : multipair_closed_real(which, mt);
    return GainExpectation{value, method, Scenario::MultiPair, which};
}

std::complex<double> multipair_closed_form_complex(antenna::AntennaKind which,
                                                   const geometry::TopologyConfig& cfg,
                                                   const channel::RadioConfig& radio) {
    cfg.validate();
    radio.validate();
    require_dipole(which, "multipair_closed_form_complex");
    return multipair_closed_complex(which, multipair_terms(cfg, radio));
}

double rate_from_gains(double zeta_desired, double zeta_interferer, int interferer_count) {
    if (interferer_count < 1) {
        throw std::invalid_argument("rate_from_gains: needs at least one interferer");
    }
    return std::log2(1.0 + zeta_desired / (static_cast<double>(interferer_count) * zeta_interferer));
}

double rate_standalone_z(int pairs) {
    if (pairs < 2) {
        throw std::invalid_argument("rate_standalone_z: needs pairs >= 2 (no interferers otherwise)");
    }
    return std::log2(1.0 + 1.0 / static_cast<double>(pairs - 1));
}

double rate_standalone_y(int pairs, const geometry::TopologyConfig& cfg,
                         const channel::RadioConfig& radio, GainMethod method) {
    if (pairs < 2) {
        throw std::invalid_argument("rate_standalone_y: needs pairs >= 2 (no interferers otherwise)");
    }
    const double zy = expected_gain_standalone(antenna::AntennaKind::DipoleY, cfg, radio, method).value;
    const double zz = expected_gain_standalone(antenna::AntennaKind::DipoleZ, cfg, radio, method).value;
    return rate_from_gains(zy, zz, pairs - 1);
}

double rate_multipair_aerial(int ground, int aerial, const geometry::TopologyConfig& cfg,
                             const channel::RadioConfig& radio, GainMethod method) {
    if (aerial < 1 || ground < 0 || ground + aerial < 2) {
        throw std::invalid_argument(
            "rate_multipair_aerial: needs aerial >= 1 and ground + aerial >= 2");
    }
    const geometry::TopologyConfig resolved = geometry::with_rayleigh_b(cfg);
    const double zz =
        expected_gain_multipair(antenna::AntennaKind::DipoleZ, resolved, radio, method).value;
    const double zy =
        expected_gain_multipair(antenna::AntennaKind::DipoleY, resolved, radio, method).value;
    return std::log2(1.0 + zy / (static_cast<double>(ground) * zz +
                                 static_cast<double>(aerial - 1) * zy));
}

} // namespace crossdip::analytic
