#include "ccr/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ccr/errors.hpp"
#include "ccr/quadrature.hpp"

namespace ccr {

namespace {

using ld = long double;
constexpr ld kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr ld kPi = 3.141592653589793238462643383279502884L;

struct SeriesValue {
    ld value;
    ld abs_sum;
};

// sum_k (-1)^k (x^2/4)^k / (k!)^2
SeriesValue j0_series(ld x) {
    const ld q = x * x / 4.0L;
    ld term = 1.0L;
    ld sum = 1.0L;
    ld abs_sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (ld(k) * ld(k));
        sum += term;
        abs_sum += std::fabs(term);
        if (std::fabs(term) < 1e-24L * abs_sum) break;
    }
    return {sum, abs_sum};
}

// sum_{k>=1} (-1)^(k+1) H_k (x^2/4)^k / (k!)^2
SeriesValue y0_harmonic_series(ld x) {
    const ld q = x * x / 4.0L;
    ld term = 1.0L;
    ld harmonic = 0.0L;
    ld sum = 0.0L;
    ld abs_sum = 0.0L;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (ld(k) * ld(k));
        harmonic += 1.0L / ld(k);
        const ld t = -term * harmonic;
        sum += t;
        abs_sum += std::fabs(t);
        if (std::fabs(t) < 1e-24L * (abs_sum + 1.0L)) break;
    }
    return {sum, abs_sum};
}

struct Asymptotic {
    ld p, q, last_term;
};

// Hankel's expansion: J0 = sqrt(2/(pi x)) (P cos chi - Q sin chi),
// Y0 = sqrt(2/(pi x)) (P sin chi + Q cos chi), chi = x - pi/4.
Asymptotic hankel_pq(ld x) {
    ld a = 1.0L;  // a_k for nu = 0
    ld p = 1.0L, q = 0.0L;
    ld xk = 1.0L;
    ld prev = std::numeric_limits<ld>::max();
    ld last = 0.0L;
    for (int k = 1; k < 60; ++k) {
        a *= -ld(2 * k - 1) * ld(2 * k - 1) / (8.0L * k);
        xk *= x;
        const ld t = a / xk;
        if (std::fabs(t) > prev) break;  // past the smallest term
        prev = std::fabs(t);
        last = t;
        const int m = k / 2;
        const ld sign = (m % 2 == 0) ? 1.0L : -1.0L;
        if (k % 2 == 0)
            p += sign * t;
        else
            q += sign * t;
        if (std::fabs(t) < 1e-22L) break;
    }
    return {p, q, std::fabs(last)};
}

}  // namespace

SpecialFunctionResult bessel_j0_detailed(double x_in) {
    const ld x = std::fabs(ld(x_in));
    constexpr ld eps = std::numeric_limits<ld>::epsilon();
    if (x < kBesselSeam) {
        const auto s = j0_series(x);
        return {double(s.value), SpecialMethod::Series, double(8.0L * eps * s.abs_sum), false};
    }
    const auto pq = hankel_pq(x);
    const ld chi = x - kPi / 4.0L;
    const ld amp = std::sqrt(2.0L / (kPi * x));
    const ld v = amp * (pq.p * std::cos(chi) - pq.q * std::sin(chi));
    return {double(v), SpecialMethod::Asymptotic, double(amp * pq.last_term + 8.0L * eps), false};
}

double bessel_j0(double x) { return bessel_j0_detailed(x).value.real(); }

namespace {

struct Y0Value {
    ld value;
    ld error;
    SpecialMethod method;
};

Y0Value y0_impl(ld x) {
    constexpr ld eps = std::numeric_limits<ld>::epsilon();
    if (x < kBesselSeam) {
        const auto j = j0_series(x);
        const auto h = y0_harmonic_series(x);
        const ld lg = std::log(x / 2.0L) + kEulerGamma;
        const ld v = (2.0L / kPi) * (lg * j.value + h.value);
        const ld err = 8.0L * eps * (std::fabs(lg) * j.abs_sum + h.abs_sum);
        return {v, err, SpecialMethod::Series};
    }
    const auto pq = hankel_pq(x);
    const ld chi = x - kPi / 4.0L;
    const ld amp = std::sqrt(2.0L / (kPi * x));
    const ld v = amp * (pq.p * std::sin(chi) + pq.q * std::cos(chi));
    return {v, amp * pq.last_term + 8.0L * eps, SpecialMethod::Asymptotic};
}

}  // namespace

double bessel_y0(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_y0 requires finite x > 0");
    return double(y0_impl(x).value);
}

SpecialFunctionResult hankel2_0_detailed(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("hankel2_0 requires finite x > 0");
    const auto j = bessel_j0_detailed(x);
    const auto y = y0_impl(x);
    return {{j.value.real(), -double(y.value)}, j.method, j.error_estimate + double(y.error), false};
}

std::complex<double> hankel2_0(double x) { return hankel2_0_detailed(x).value; }

namespace {

constexpr double kSegment = 3.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;

AdaptiveOptions hankel_options() {
    AdaptiveOptions o;
    o.rel_tol = 1e-13;
    o.abs_tol = 1e-15;
    o.initial_pieces = 8;
    o.max_evals = 400'000;
    return o;
}

// integral of exp(-i x cosh s) along s = S - i y, y in [0, pi/2], then along
// s = t - i pi/2, t in [S, cutoff]. Equals the real-axis integral over [S, inf).
QuadResult<cplx> right_tail(double x, double seg, double cutoff) {
    const auto opt = hankel_options();
    auto vertical = integrate(
        [&](double y) {
            const cplx s(seg, -y);
            return std::exp(cplx(0.0, -x) * std::cosh(s)) * cplx(0.0, -1.0);
        },
        0.0, kHalfPi, opt);
    auto horizontal = integrate([&](double t) { return cplx(std::exp(-x * std::sinh(t)), 0.0); }, seg, cutoff, opt);
    const double truncation = std::exp(-x * std::sinh(cutoff)) / (x * std::cosh(cutoff));
    return {vertical.value + horizontal.value, vertical.error + horizontal.error + truncation,
            vertical.evals + horizontal.evals, vertical.converged && horizontal.converged};
}

// Mirror image for (-inf, -S]: s = t + i pi/2 for t in [-cutoff, -S], then
// s = -S + i y descending from pi/2 to 0.
QuadResult<cplx> left_tail(double x, double seg, double cutoff) {
    const auto opt = hankel_options();
    auto horizontal = integrate([&](double t) { return cplx(std::exp(x * std::sinh(t)), 0.0); }, -cutoff, -seg, opt);
    auto vertical = integrate(
        [&](double y) {
            const cplx s(-seg, y);
            return std::exp(cplx(0.0, -x) * std::cosh(s)) * cplx(0.0, 1.0);
        },
        kHalfPi, 0.0, opt);
    const double truncation = std::exp(-x * std::sinh(cutoff)) / (x * std::cosh(cutoff));
    return {vertical.value + horizontal.value, vertical.error + horizontal.error + truncation,
            vertical.evals + horizontal.evals, vertical.converged && horizontal.converged};
}

QuadResult<cplx> central(double x, double lo, double hi) {
    auto opt = hankel_options();
    opt.initial_pieces = 16;
    return integrate([&](double s) { return std::exp(cplx(0.0, -x * std::cosh(s))); }, lo, hi, opt);
}

SpecialFunctionResult finish(double x, const QuadResult<cplx>& total) {
    // H = -(1/(pi i)) I = (i/pi) I
    const cplx h = cplx(0.0, 1.0 / std::numbers::pi) * total.value;
    return {h, SpecialMethod::Integral, total.error / std::numbers::pi, x < 0.1 || !total.converged};
}

}  // namespace

SpecialFunctionResult hankel2_0_integral(double x, double s_cutoff) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("hankel2_0_integral requires finite x > 0");
    const double seg = std::min(kSegment, s_cutoff);
    const auto c = central(x, -seg, seg);
    const auto r = right_tail(x, seg, std::max(seg, s_cutoff));
    const auto l = left_tail(x, seg, std::max(seg, s_cutoff));
    QuadResult<cplx> total{c.value + r.value + l.value, c.error + r.error + l.error, c.evals + r.evals + l.evals,
                           c.converged && r.converged && l.converged};
    return finish(x, total);
}

SpecialFunctionResult hankel2_0_integral_half_line(double x, double s_cutoff) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("hankel2_0_integral requires finite x > 0");
    const double seg = std::min(kSegment, s_cutoff);
    const auto c = central(x, 0.0, seg);
    const auto r = right_tail(x, seg, std::max(seg, s_cutoff));
    QuadResult<cplx> total{2.0 * (c.value + r.value), 2.0 * (c.error + r.error), c.evals + r.evals,
                           c.converged && r.converged};
    return finish(x, total);
}

}  // namespace ccr
