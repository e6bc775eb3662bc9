#pragma once

// Numerical integration used throughout the library: a global adaptive
// Gauss-Kronrod (21-point) driver, a tanh-sinh rule for endpoint
// singularities, a doubling trapezoid rule for periodic integrands and
// nested box integration in two and three dimensions.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

#include "ccr/errors.hpp"

namespace ccr {

using Vec3 = std::array<double, 3>;
using cplx = std::complex<double>;

/// Knobs shared by every quadrature-backed operation.
struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    long max_evals = 50'000'000;
    double alpha_cutoff = 40.0;  // boost-parameter truncation
    int n_max = 16;              // discrete-sum truncation
    bool singularity_split = true;

    /// Throws DomainError when a field is out of range.
    void validate() const;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    long evals = 0;
    bool converged = true;
};

struct AdaptiveOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    long max_evals = 2'000'000;
    int initial_pieces = 1;
    std::vector<double> breakpoints;  // interior points where the integrand may kink
};

namespace detail {

// Kronrod abscissae in descending order (xgk[10] == 0), Kronrod weights and
// the Gauss weights belonging to the odd-indexed abscissae.
std::span<const double> gk21_abscissae();
std::span<const double> gk21_kronrod_weights();
std::span<const double> gk21_gauss_weights();

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

/// One application of the 21-point Kronrod rule with its embedded 10-point
/// Gauss rule. The error estimate follows the QUADPACK heuristic.
template <class F>
auto gauss_kronrod21(F&& f, double a, double b) {
    using T = std::decay_t<decltype(f(a))>;
    const auto xgk = detail::gk21_abscissae();
    const auto wgk = detail::gk21_kronrod_weights();
    const auto wg = detail::gk21_gauss_weights();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<T, 21> fv;
    fv[10] = f(center);
    for (int j = 0; j < 10; ++j) {
        const double dx = half * xgk[j];
        fv[j] = f(center - dx);
        fv[20 - j] = f(center + dx);
    }
    T resk = wgk[10] * fv[10];
    T resg = T{};
    double resabs = wgk[10] * detail::magnitude(fv[10]);
    for (int j = 0; j < 10; ++j) {
        resk += wgk[j] * (fv[j] + fv[20 - j]);
        resabs += wgk[j] * (detail::magnitude(fv[j]) + detail::magnitude(fv[20 - j]));
        if (j % 2 == 1) resg += wg[j / 2] * (fv[j] + fv[20 - j]);
    }
    const T mean = 0.5 * resk;
    double resasc = wgk[10] * detail::magnitude(fv[10] - mean);
    for (int j = 0; j < 10; ++j)
        resasc += wgk[j] * (detail::magnitude(fv[j] - mean) + detail::magnitude(fv[20 - j] - mean));

    const double ahalf = std::abs(half);
    double err = detail::magnitude((resk - resg) * half);
    resasc *= ahalf;
    resabs *= ahalf;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);

    return QuadResult<T>{resk * half, err, 21, true};
}

/// Global adaptive bisection over [a, b]: the segment with the largest error
/// estimate is split until the summed error meets max(abs_tol, rel_tol*|I|).
template <class F>
auto integrate(F&& f, double a, double b, const AdaptiveOptions& opt = {}) {
    using T = std::decay_t<decltype(f(a))>;
    QuadResult<T> out;
    if (a == b) return out;
    const double sign = b > a ? 1.0 : -1.0;
    if (b < a) std::swap(a, b);

    std::vector<double> cuts{a};
    for (double p : opt.breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<detail::Segment<T>> heap;
    std::vector<detail::Segment<T>> frozen;
    const int pieces = std::max(1, opt.initial_pieces);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double h = (cuts[c + 1] - cuts[c]) / pieces;
        for (int p = 0; p < pieces; ++p) {
            const double lo = cuts[c] + p * h;
            const double hi = (p + 1 == pieces) ? cuts[c + 1] : lo + h;
            auto r = gauss_kronrod21(f, lo, hi);
            out.value += r.value;
            out.error += r.error;
            out.evals += r.evals;
            heap.push({lo, hi, r.value, r.error});
        }
    }

    const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
    while (!heap.empty()) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(out.value));
        if (out.error <= target) break;
        if (out.evals >= opt.max_evals) {
            out.converged = false;
            break;
        }
        auto seg = heap.top();
        heap.pop();
        const double mid = 0.5 * (seg.a + seg.b);
        if (seg.b - seg.a <= std::max(min_width, std::numeric_limits<double>::min())) {
            frozen.push_back(seg);
            if (heap.empty()) {
                out.converged = false;
                break;
            }
            continue;
        }
        auto left = gauss_kronrod21(f, seg.a, mid);
        auto right = gauss_kronrod21(f, mid, seg.b);
        out.evals += 42;
        out.value += (left.value + right.value) - seg.value;
        out.error += (left.error + right.error) - seg.error;
        heap.push({seg.a, mid, left.value, left.error});
        heap.push({mid, seg.b, right.value, right.error});
    }

    // Re-sum the live segments to shed incremental round-off.
    T total{};
    double err = 0.0;
    auto drain = heap;
    while (!drain.empty()) {
        total += drain.top().value;
        err += drain.top().error;
        drain.pop();
    }
    for (const auto& s : frozen) {
        total += s.value;
        err += s.error;
    }
    out.value = sign * total;
    out.error = err;
    if (out.converged) out.converged = err <= std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total)) * 1.0000001;
    return out;
}

/// Tanh-sinh (double exponential) rule on a finite interval. Integrable
/// endpoint singularities are tolerated; abscissae are formed from the
/// endpoint distance so that f sees exact small offsets near a and b.
template <class F>
auto integrate_tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-12, double abs_tol = 1e-15,
                         int max_level = 12) {
    using T = std::decay_t<decltype(f(a))>;
    QuadResult<T> out;
    if (a == b) return out;
    const double half = 0.5 * (b - a);
    constexpr double t_max = 4.5;
    constexpr double pi_2 = 1.5707963267948966;

    auto node_pair = [&](double t) -> T {
        const double u = pi_2 * std::sinh(t);
        const double e = std::exp(-2.0 * std::abs(u));
        const double d = 2.0 * half * e / (1.0 + e);  // distance to the nearer endpoint
        const double ch = std::cosh(u);
        const double w = half * pi_2 * std::cosh(t) / (ch * ch);
        if (!(w > 0.0) || !(d > 0.0)) return T{};
        const double x_lo = a + d;
        const double x_hi = b - d;
        return w * (f(x_lo) + f(x_hi));
    };

    double h = 1.0;
    T sum = half * pi_2 * f(0.5 * (a + b));
    out.evals = 1;
    for (double t = h; t <= t_max; t += h) {
        sum += node_pair(t);
        out.evals += 2;
    }
    T estimate = h * sum;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (double t = h; t <= t_max; t += 2.0 * h) {
            sum += node_pair(t);
            out.evals += 2;
        }
        const T next = h * sum;
        const double diff = detail::magnitude(next - estimate);
        estimate = next;
        out.error = diff;
        if (level >= 3 && diff <= std::max(abs_tol, rel_tol * detail::magnitude(next))) {
            out.value = estimate;
            return out;
        }
    }
    out.value = estimate;
    out.converged = false;
    return out;
}

/// Trapezoid rule over one period with node doubling; spectrally accurate for
/// smooth periodic integrands. The starting node count is n0.
template <class F>
auto integrate_periodic(F&& f, double x0, double period, double rel_tol = 1e-12, double abs_tol = 1e-15,
                        int n0 = 16, int n_limit = 1 << 14) {
    using T = std::decay_t<decltype(f(x0))>;
    QuadResult<T> out;
    int n = n0;
    T sum{};
    for (int j = 0; j < n; ++j) sum += f(x0 + period * j / n);
    out.evals = n;
    T estimate = sum * (period / n);
    while (n < n_limit) {
        for (int j = 0; j < n; ++j) sum += f(x0 + period * (2 * j + 1) / (2.0 * n));
        out.evals += n;
        n *= 2;
        const T next = sum * (period / n);
        const double diff = detail::magnitude(next - estimate);
        estimate = next;
        out.error = diff;
        if (diff <= std::max(abs_tol, rel_tol * detail::magnitude(next))) {
            out.value = estimate;
            return out;
        }
    }
    out.value = estimate;
    out.converged = false;
    return out;
}

struct Box3 {
    Vec3 lo;
    Vec3 hi;
    bool empty() const { return lo[0] >= hi[0] || lo[1] >= hi[1] || lo[2] >= hi[2]; }
};

inline Box3 intersect(const Box3& a, const Box3& b) {
    Box3 r;
    for (int i = 0; i < 3; ++i) {
        r.lo[i] = std::max(a.lo[i], b.lo[i]);
        r.hi[i] = std::min(a.hi[i], b.hi[i]);
    }
    return r;
}

/// Iterated adaptive integration over an axis-aligned box. Each axis is
/// broken at 0 when the box straddles it, which places the kink of
/// |k|-dependent integrands on segment boundaries.
template <class F>
auto integrate_box3(F&& f, const Box3& box, const AdaptiveOptions& opt) {
    using T = std::decay_t<decltype(f(Vec3{}))>;
    QuadResult<T> out;
    if (box.empty()) return out;
    const double lx = box.hi[0] - box.lo[0];
    const double ly = box.hi[1] - box.lo[1];

    AdaptiveOptions ox = opt;
    ox.breakpoints = {0.0};
    ox.initial_pieces = std::max(2, opt.initial_pieces);
    AdaptiveOptions oy = ox;
    oy.abs_tol = 0.2 * opt.abs_tol / lx;
    oy.rel_tol = 0.2 * opt.rel_tol;
    AdaptiveOptions oz = ox;
    oz.abs_tol = 0.2 * oy.abs_tol / ly;
    oz.rel_tol = 0.2 * opt.rel_tol;

    long evals = 0;
    bool ok = true;
    double worst_inner = 0.0;
    auto gx = [&](double x) {
        auto gy = [&](double y) {
            auto r = integrate([&](double z) { return f(Vec3{x, y, z}); }, box.lo[2], box.hi[2], oz);
            evals += r.evals;
            ok = ok && r.converged;
            worst_inner = std::max(worst_inner, r.error * ly * lx);
            return r.value;
        };
        auto r = integrate(gy, box.lo[1], box.hi[1], oy);
        ok = ok && r.converged;
        worst_inner = std::max(worst_inner, r.error * lx);
        return r.value;
    };
    auto r = integrate(gx, box.lo[0], box.hi[0], ox);
    out.value = r.value;
    out.error = r.error + worst_inner;
    out.evals = evals;
    out.converged = ok && r.converged;
    return out;
}

/// Iterated adaptive integration over a rectangle [x0,x1] x [y0,y1].
template <class F>
auto integrate_rect(F&& f, double x0, double x1, double y0, double y1, const AdaptiveOptions& opt) {
    using T = std::decay_t<decltype(f(x0, y0))>;
    QuadResult<T> out;
    if (x0 >= x1 || y0 >= y1) return out;
    AdaptiveOptions oy = opt;
    oy.abs_tol = 0.2 * opt.abs_tol / (x1 - x0);
    oy.rel_tol = 0.2 * opt.rel_tol;
    long evals = 0;
    bool ok = true;
    double worst_inner = 0.0;
    auto gx = [&](double x) {
        auto r = integrate([&](double y) { return f(x, y); }, y0, y1, oy);
        evals += r.evals;
        ok = ok && r.converged;
        worst_inner = std::max(worst_inner, r.error * (x1 - x0));
        return r.value;
    };
    auto r = integrate(gx, x0, x1, opt);
    out.value = r.value;
    out.error = r.error + worst_inner;
    out.evals = evals;
    out.converged = ok && r.converged;
    return out;
}

/// Adaptive options derived from a QuadratureConfig and a magnitude scale
/// that the absolute tolerance is measured against.
AdaptiveOptions adaptive_options(const QuadratureConfig& quad, double scale = 1.0);

}  // namespace ccr
