// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace crossdip::quadrature {

struct Options {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    int max_intervals = 4000;
};

namespace detail {

// 15-point Gauss-Kronrod rule (7-point Gauss embedded). Nodes/weights are the
// classical QUADPACK dqk15 constants.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(F&& f, double a, double b, double& result, double& err) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(c);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = half * kXgk[j];
        const double fsum = f(c - x) + f(c + x);
        res_k += kWgk[j] * fsum;
        if (j % 2 == 1) res_g += kWg[j / 2] * fsum;
    }
    result = res_k * half;
    err = std::abs((res_k - res_g) * half);
}

struct Segment {
    double a, b, value, err;
};

} // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b]. Accepts when
// the summed error estimate drops below max(abs_tol, rel_tol*|integral|).
template <class F>
double integrate(F&& f, double a, double b, Options opt = {}) {
    if (a == b) return 0.0;
    if (a > b) throw std::invalid_argument("quadrature::integrate: requires a <= b");

    std::vector<detail::Segment> segs;
    segs.reserve(64);
    detail::Segment s{a, b, 0.0, 0.0};
    detail::gk15(f, a, b, s.value, s.err);
    segs.push_back(s);

    double total = s.value;
    double total_err = s.err;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) &&
           static_cast<int>(segs.size()) < opt.max_intervals) {
        auto worst = std::max_element(segs.begin(), segs.end(),
                                      [](const auto& x, const auto& y) { return x.err < y.err; });
        const detail::Segment cur = *worst;
        const double mid = 0.5 * (cur.a + cur.b);
        if (mid <= cur.a || mid >= cur.b) break; // interval at floating-point resolution
        detail::Segment left{cur.a, mid, 0.0, 0.0}, right{mid, cur.b, 0.0, 0.0};
        detail::gk15(f, left.a, left.b, left.value, left.err);
        detail::gk15(f, right.a, right.b, right.value, right.err);
        *worst = left;
        segs.push_back(right);
        total += left.value + right.value - cur.value;
        total_err += left.err + right.err - cur.err;
    }
    if (total_err > std::max(opt.abs_tol * 1e3, 1e-4 * std::abs(total)) &&
        static_cast<int>(segs.size()) >= opt.max_intervals) {
        throw std::runtime_error("quadrature::integrate: failed to converge");
    }
    // Recompute the sum in segment order for a reproducible result.
    total = 0.0;
    for (const auto& seg : segs) total += seg.value;
    return total;
}

} // namespace crossdip::quadrature
