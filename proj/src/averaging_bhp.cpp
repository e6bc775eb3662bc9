#include <cmath>
#include <limits>
#include <numbers>

#include "ccr/averaging.hpp"
#include "ccr/errors.hpp"
#include "ccr/parallel.hpp"
#include "ccr/reduction.hpp"
#include "ccr/specfun.hpp"

namespace ccr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_massless(const FieldVector& f) {
    if (f.mass() != 0.0) throw MassMismatch("the Z x R^2 average is defined for massless fields");
}

void require_bhp_measure(const HaarMeasure& haar) {
    haar.validate();
    if (haar.kind != HaarMeasure::Kind::CountingLebesgue)
        throw DomainError("Z x R^2 averages need the counting x Lebesgue measure");
}

double norm_bound(const FieldVector& f) {
    double s = 0.0;
    for (const auto& t : f.terms()) s += t.l2_norm();
    return s;
}

double peak_bound(const FieldVector& f) {
    double s = 0.0;
    for (const auto& t : f.terms()) s += std::abs(t.base.coeff);
    return s;
}

cplx amp(const FieldVector& f, double kx, double ky) { return evaluate_amplitude(f, {kx, ky, 0.0}); }

struct Partial {
    cplx value;
    double error = 0.0;
    double tail = 0.0;
};

void check(const QuadResult<cplx>& r, const char* what) {
    if (!r.converged) throw QuadratureNonConvergence(what, r.error);
}

AdaptiveOptions inner_options(const AdaptiveOptions& outer, double outer_length) {
    AdaptiveOptions o = outer;
    o.rel_tol = 0.2 * outer.rel_tol;
    o.abs_tol = 0.2 * outer.abs_tol / std::max(outer_length, 1e-300);
    return o;
}

}  // namespace

GroupGrid product_grid(int n_max, double alpha_max, int n_alpha, double beta_max, int n_beta) {
    if (n_max < 0 || n_alpha < 1 || n_beta < 1) throw DomainError("grid sizes must be positive");
    auto axis = [](double half, int count) {
        std::vector<std::pair<double, double>> pts;
        if (count == 1) return std::vector<std::pair<double, double>>{{0.0, 1.0}};
        const double h = 2.0 * half / (count - 1);
        for (int i = 0; i < count; ++i) pts.emplace_back(-half + i * h, (i == 0 || i == count - 1) ? 0.5 * h : h);
        return pts;
    };
    const auto alphas = axis(alpha_max, n_alpha);
    const auto betas = axis(beta_max, n_beta);
    GroupGrid grid;
    for (long n = -n_max; n <= n_max; ++n) {
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            for (std::size_t j = 0; j < betas.size(); ++j) {
                const bool edge = (n_max > 0 && std::abs(n) == n_max) ||
                                  (n_alpha > 1 && (i == 0 || i + 1 == alphas.size())) ||
                                  (n_beta > 1 && (j == 0 || j + 1 == betas.size()));
                grid.push_back({BHPElement{n, alphas[i].first, betas[j].first},
                                alphas[i].second * betas[j].second, edge});
            }
        }
    }
    return grid;
}

AverageResult average_bform_bhp_direct(const FieldVector& f1, const FieldVector& f2, const GroupGrid& grid,
                                       const QuadratureConfig& quad, const HaarMeasure& haar) {
    require_massless(f1);
    require_massless(f2);
    require_bhp_measure(haar);
    const auto parts = parallel_map<BFormValue>(grid.size(), [&](std::size_t i) {
        return bform(f1, apply_group(grid[i].g, f2), quad);
    });
    AverageResult out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = haar.scale * grid[i].weight;
        out.value += w * parts[i].value;
        out.error_estimate += std::abs(w) * parts[i].error_estimate;
        if (grid[i].boundary) out.tail_bound += std::abs(w * parts[i].value);
    }
    return out;
}

BFormValue bform_boosted_integrand(const FieldVector& f1, const FieldVector& f2, const BHPElement& g,
                                   const QuadratureConfig& quad) {
    require_massless(f1);
    require_massless(f2);
    quad.validate();
    if (f1.empty() || f2.empty()) return {cplx{}, 0.0};

    // a1(L k) is negligible unless k lies in L^{-1} of the support of a1.
    std::vector<TransformedPacket> pulled;
    for (auto t : f1.terms()) {
        t.actions.push_back(BHPElement{0, -g.alpha, 0.0});
        pulled.push_back(std::move(t));
    }
    const Box3 box = intersect(field_support(FieldVector(0.0, pulled)), field_support(f2));
    if (box.empty()) return {cplx{}, 0.0};

    const double ch = std::cosh(g.alpha), sh = std::sinh(g.alpha);
    auto integrand = [&](const Vec3& k) -> cplx {
        const double w = frequency(k, 0.0);
        if (w == 0.0) return {};
        const Vec3 l{k[0], k[1] * ch - w * sh, k[2]};
        const double wl = frequency(l, 0.0);
        if (wl == 0.0) return {};
        const double dl = k[1] * sh - w * ch;
        const double theta = kTwoPi * double(g.n) * k[0] + g.beta * k[2];
        return -dl / std::sqrt(w * wl) * std::conj(evaluate_amplitude(f1, l)) * evaluate_amplitude(f2, k) *
               std::polar(1.0, theta);
    };
    const auto r = integrate_box3(integrand, box, adaptive_options(quad, norm_bound(f1) * norm_bound(f2)));
    if (!r.converged) throw QuadratureNonConvergence("boosted integrand quadrature did not converge", r.error);
    return {r.value, r.error};
}

// ---------------------------------------------------------------------------
// Boost-integral level

namespace {

// int d alpha sqrt(omega'/omega) a2(m, l(alpha), 0) at momentum (m, ky, 0),
// m != 0, in gamma = alpha + v with ky = |m| sinh v.
Partial boost_inner_massive_line(const FieldVector& f2, long m, double ky, const Interval& line2, double cut,
                                 const AdaptiveOptions& opt) {
    const double mm = std::abs(double(m));
    const double v = std::asinh(ky / mm);
    const double g_lo = std::asinh(line2.lo / mm), g_hi = std::asinh(line2.hi / mm);
    auto f = [&](double gamma) {
        return std::sqrt(std::cosh(gamma) / std::cosh(v)) * amp(f2, double(m), mm * std::sinh(gamma));
    };
    Partial p;
    const double a = std::max(g_lo, v - cut), b = std::min(g_hi, v + cut);
    if (a < b) {
        const auto r = integrate(f, a, b, opt);
        check(r, "boost integral did not converge");
        p.value = r.value;
        p.error = r.error;
    }
    auto removed = [&](double lo, double hi) {
        if (!(lo < hi)) return 0.0;
        return integrate([&](double gamma) { return std::abs(f(gamma)); }, lo, hi, opt).value;
    };
    p.tail = removed(g_lo, std::min(g_hi, v - cut)) + removed(std::max(g_lo, v + cut), g_hi);
    return p;
}

// m = 0: for ky = s * kappa the boost maps ky to s * kappa * e^{s alpha};
// after alpha -> s alpha the integrand is e^{alpha/2} a2(0, s kappa e^alpha, 0).
Partial boost_inner_zero_line(const FieldVector& f2, double s, double kappa, const Interval& line2, double cut,
                              const AdaptiveOptions& opt) {
    const double l_max = s > 0.0 ? line2.hi : -line2.lo;
    const double l_min = std::max(0.0, s > 0.0 ? line2.lo : -line2.hi);
    Partial p;
    if (!(l_max > 0.0)) return p;
    const double a_hi = std::log(l_max / kappa);
    const double a_lo = l_min > 0.0 ? std::log(l_min / kappa) : -HUGE_VAL;
    auto f = [&](double alpha) { return std::exp(0.5 * alpha) * amp(f2, 0.0, s * kappa * std::exp(alpha)); };
    const double a = std::max(a_lo, -cut), b = std::min(a_hi, cut);
    if (a < b) {
        const auto r = integrate(f, a, b, opt);
        check(r, "boost integral did not converge");
        p.value = r.value;
        p.error = r.error;
    }
    if (a_lo < -cut) p.tail += 2.0 * std::exp(-0.5 * cut) * std::abs(amp(f2, 0.0, s * kappa * std::exp(-cut)));
    if (a_hi > cut)
        p.tail += integrate([&](double alpha) { return std::abs(f(alpha)); }, std::max(cut, a_lo), a_hi, opt).value;
    return p;
}

}  // namespace

AverageResult average_bform_bhp_boost(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad,
                                      const HaarMeasure& haar) {
    require_massless(f1);
    require_massless(f2);
    require_bhp_measure(haar);
    quad.validate();
    const double cut = quad.alpha_cutoff;
    const AdaptiveOptions outer = adaptive_options(quad, norm_bound(f1) * norm_bound(f2));
    const double peak1 = peak_bound(f1);

    const int n_max = quad.n_max;
    auto per_m = [&](std::size_t idx) -> Partial {
        const long m = long(idx) - n_max;
        const Interval line1 = line_support(f1, double(m), 0.0);
        const Interval line2 = line_support(f2, double(m), 0.0);
        Partial out;
        if (line1.empty() || line2.empty()) return out;
        const AdaptiveOptions inner = inner_options(outer, line1.hi - line1.lo);
        double max_tail = 0.0;
        if (m != 0) {
            auto g = [&](double ky) {
                const Partial p = boost_inner_massive_line(f2, m, ky, line2, cut, inner);
                max_tail = std::max(max_tail, p.tail);
                return std::conj(amp(f1, double(m), ky)) * p.value;
            };
            const auto r = integrate(g, line1.lo, line1.hi, outer);
            check(r, "boost-level outer integral did not converge");
            out.value = r.value;
            out.error = r.error;
            out.tail = max_tail * peak1 * (line1.hi - line1.lo);
            return out;
        }
        // ky = s u^2; the |ky|^(-1/2) growth of the inner integral cancels
        // against dky = 2u du.
        for (double s : {1.0, -1.0}) {
            const double hi = s > 0.0 ? line1.hi : -line1.lo;
            const double lo = std::max(0.0, s > 0.0 ? line1.lo : -line1.hi);
            if (!(hi > lo)) continue;
            auto g = [&](double u) {
                const Partial p = boost_inner_zero_line(f2, s, u * u, line2, cut, inner);
                max_tail = std::max(max_tail, 2.0 * u * p.tail);
                return 2.0 * u * std::conj(amp(f1, 0.0, s * u * u)) * p.value;
            };
            const auto r = integrate(g, std::sqrt(lo), std::sqrt(hi), outer);
            check(r, "boost-level outer integral did not converge");
            out.value += r.value;
            out.error += r.error;
            out.tail += max_tail * peak1 * (std::sqrt(hi) - std::sqrt(lo));
        }
        return out;
    };
    const auto parts = parallel_map<Partial>(std::size_t(2 * n_max + 1), per_m);

    AverageResult res;
    auto add = [&](const Partial& p) {
        res.value += p.value;
        res.error_estimate += p.error;
        res.tail_bound += p.tail;
    };
    add(parts[n_max]);
    for (int n = 1; n <= n_max; ++n) {
        add(parts[n_max + n]);
        add(parts[n_max - n]);
    }
    const double c = kTwoPi * haar.scale;
    res.value *= c;
    res.error_estimate *= c;
    res.tail_bound *= c;
    return res;
}

// ---------------------------------------------------------------------------
// Double-integral level

AverageResult average_bform_bhp_semianalytic(const FieldVector& f1, const FieldVector& f2,
                                             const QuadratureConfig& quad, const HaarMeasure& haar) {
    require_massless(f1);
    require_massless(f2);
    require_bhp_measure(haar);
    quad.validate();
    const double rel = std::max(quad.rel_tol, 1e-13);
    const double abs = 1e-3 * rel * norm_bound(f1) * norm_bound(f2);

    auto pieces = [](const Interval& line, long m) {
        std::vector<Interval> out;
        if (line.empty()) return out;
        if (m == 0 && line.lo < 0.0 && line.hi > 0.0) return std::vector<Interval>{{line.lo, 0.0}, {0.0, line.hi}};
        return std::vector<Interval>{line};
    };

    const int n_max = quad.n_max;
    auto per_m = [&](std::size_t idx) -> Partial {
        const long m = long(idx) - n_max;
        const double m2 = double(m) * double(m);
        const auto p1 = pieces(line_support(f1, double(m), 0.0), m);
        const auto p2 = pieces(line_support(f2, double(m), 0.0), m);
        Partial out;
        bool ok = true;
        for (const auto& a : p1) {
            for (const auto& b : p2) {
                auto outer = [&](double l) {
                    const cplx w1 = std::conj(amp(f1, double(m), l)) * std::pow(m2 + l * l, -0.25);
                    auto inner = [&](double k) { return w1 * amp(f2, double(m), k) * std::pow(m2 + k * k, -0.25); };
                    const auto r = integrate_tanh_sinh(inner, b.lo, b.hi, 0.2 * rel, 0.0);
                    ok = ok && r.converged;
                    return r.value;
                };
                const auto r = integrate_tanh_sinh(outer, a.lo, a.hi, rel, abs);
                ok = ok && r.converged;
                out.value += r.value;
                out.error += r.error;
            }
        }
        if (!ok) throw QuadratureNonConvergence("double-integral level did not converge", out.error);
        return out;
    };
    const auto parts = parallel_map<Partial>(std::size_t(2 * n_max + 1), per_m);

    AverageResult res;
    auto add = [&](const Partial& p) {
        res.value += p.value;
        res.error_estimate += p.error;
    };
    add(parts[n_max]);
    for (int n = 1; n <= n_max; ++n) {
        add(parts[n_max + n]);
        add(parts[n_max - n]);
    }
    const double c = kTwoPi * haar.scale;
    res.value *= c;
    res.error_estimate *= c;
    return res;
}

AverageResult average_bform_bhp_reduced(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad,
                                        const HaarMeasure& haar) {
    require_massless(f1);
    require_massless(f2);
    require_bhp_measure(haar);
    const ReducedSequence s1 = project_bhp(f1, quad.n_max, quad);
    const ReducedSequence s2 = project_bhp(f2, quad.n_max, quad);
    AverageResult res;
    auto add = [&](long n) {
        const std::size_t i = std::size_t(n + quad.n_max);
        res.value += std::conj(s1.entries[i]) * s2.entries[i];
        res.error_estimate += std::abs(s1.entries[i]) * s2.errors[i] + std::abs(s2.entries[i]) * s1.errors[i];
    };
    add(0);
    for (long n = 1; n <= quad.n_max; ++n) {
        add(n);
        add(-n);
    }
    auto mag = [&](long n) {
        return std::abs(s1.at(n)) * std::abs(s2.at(n)) + (n != 0 ? std::abs(s1.at(-n)) * std::abs(s2.at(-n)) : 0.0);
    };
    const long top = quad.n_max;
    res.tail_bound = top >= 2 ? ratio_tail(mag(top - 2), mag(top - 1), mag(top)) : mag(top);
    res.value *= haar.scale;
    res.error_estimate *= haar.scale;
    res.tail_bound *= haar.scale;
    return res;
}

SubstitutionCheck alpha_substitution_check(double center, double width, const Vec3& k, double mass,
                                           double alpha_cutoff) {
    if (!(width > 0.0)) throw DomainError("width must be positive");
    const double w = frequency(k, mass);
    const double mu = std::sqrt(std::max(0.0, w * w - k[1] * k[1]));
    auto l_of = [&](double a) { return k[1] * std::cosh(a) - w * std::sinh(a); };
    auto alpha_of = [&](double l) {
        if (mu > 0.0) return std::asinh(k[1] / mu) - std::asinh(l / mu);
        return (l / k[1] > 0.0) ? -std::log(l / k[1]) : std::numeric_limits<double>::quiet_NaN();
    };
    auto h = [&](double l) {
        const double d = (l - center) / width;
        return std::exp(-0.5 * d * d);
    };
    AdaptiveOptions opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = 1e-15 * width;
    for (int j = -12; j <= 12; ++j) {
        const double a = alpha_of(center + j * width);
        if (std::isfinite(a)) opt.breakpoints.push_back(a);
    }
    SubstitutionCheck out;
    out.lhs = integrate([&](double a) { return (w * std::cosh(a) - k[1] * std::sinh(a)) * h(l_of(a)); },
                        -alpha_cutoff, alpha_cutoff, opt)
                  .value;
    AdaptiveOptions lopt;
    lopt.rel_tol = 1e-13;
    lopt.abs_tol = 1e-15 * width;
    const double l_lo = std::max(l_of(alpha_cutoff), center - 12.0 * width);
    const double l_hi = std::min(l_of(-alpha_cutoff), center + 12.0 * width);
    if (l_lo < l_hi) out.rhs = integrate(h, l_lo, l_hi, lopt).value;
    return out;
}

PoissonCheck poisson_check(const std::function<double(double)>& h, int n_max, double u_cutoff) {
    if (n_max < 0 || !(u_cutoff > 0.0)) throw DomainError("poisson_check needs n_max >= 0 and u_cutoff > 0");
    AdaptiveOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-14;
    opt.max_evals = 50'000'000;
    const int per_unit = 2 * n_max + 1;
    for (long j = long(std::floor(-u_cutoff * per_unit)); j <= long(std::ceil(u_cutoff * per_unit)); ++j)
        opt.breakpoints.push_back(double(j) / per_unit);
    auto g = [&](double u) {
        cplx s{};
        for (int n = -n_max; n <= n_max; ++n) s += std::polar(1.0, kTwoPi * n * u);
        return s * h(u);
    };
    PoissonCheck out;
    out.lhs = integrate(g, -u_cutoff, u_cutoff, opt).value;
    out.rhs = h(0.0);
    for (int m = 1; m <= n_max; ++m) out.rhs += h(double(m)) + h(double(-m));
    return out;
}

// ---------------------------------------------------------------------------
// Averaged field

FieldAverage average_field_bhp(const FieldVector& f, double tau, double sigma, const QuadratureConfig& quad,
                               FieldPath path, const HaarMeasure& haar) {
    require_massless(f);
    require_bhp_measure(haar);
    quad.validate();
    if (!f.in_s0())
        throw ZeroModeDivergence("the group-averaged field exists only for a(0, k^y, 0) = 0 (S0 flag not set)");
    if (!(tau > 0.0)) throw DomainError("tau must be positive");

    if (path == FieldPath::Series) {
        const ReducedSequence s = project_bhp(f, quad.n_max, quad);
        const GowdySolution psi = gowdy_from_sequence(s);
        FieldAverage out;
        out.value = haar.scale * gowdy_evaluate(psi, tau, sigma);
        for (long n = 1; n <= s.n_max; ++n) {
            const double hmag = std::abs(hankel2_0(double(n) * tau));
            out.error_estimate += hmag * (s.errors[s.n_max + n] + s.errors[s.n_max - n]) / std::sqrt(2.0);
        }
        out.error_estimate *= haar.scale;
        return out;
    }

    const double norm = std::sqrt(2.0 * kTwoPi * kTwoPi * kTwoPi);
    const AdaptiveOptions opt = adaptive_options(quad, norm_bound(f));
    cplx sum{};
    double err = 0.0;
    auto term = [&](long n) {
        const Interval line = line_support(f, double(n), 0.0);
        if (line.empty()) return;
        auto g = [&](double ky) { return amp(f, double(n), ky) / (norm * std::sqrt(std::hypot(double(n), ky))); };
        const auto r = integrate(g, line.lo, line.hi, opt);
        check(r, "mode-weight integral did not converge");
        // After alpha -> alpha + v(k^y) the boost integral is the same for all k^y.
        const auto h = hankel2_0_integral(std::abs(double(n)) * tau);
        const cplx boost = cplx(0.0, -kPi) * h.value;
        sum += kTwoPi * std::polar(1.0, double(n) * sigma) * boost * r.value;
        err += kTwoPi * (std::abs(boost) * r.error + kPi * h.error_estimate * std::abs(r.value));
    };
    for (long n = 1; n <= quad.n_max; ++n) {
        term(n);
        term(-n);
    }
    return {haar.scale * 2.0 * sum.real(), haar.scale * 2.0 * err};
}

namespace {

// F(x) = int_x^inf e^{-iu} / u du = E1(ix) for x > 0: power series for
// x <= 2, Lentz continued fraction beyond.
cplx exp_integral_tail(double x) {
    constexpr double eps = 1e-16;
    if (x <= 2.0) {
        cplx sum{}, term{1.0, 0.0};
        for (int k = 1; k < 200; ++k) {
            term *= cplx(0.0, -x) / double(k);
            const cplx add = term / double(k);
            sum += add;
            if (std::abs(add) < eps * std::abs(sum)) break;
        }
        return -std::numbers::egamma - std::log(x) - cplx(0.0, 0.5 * kPi) - sum;
    }
    const double tiny = 1e-300;
    cplx b(1.0, x), c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 2; i < 100000; ++i) {
        const double a = -double(i - 1) * double(i - 1);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h * std::polar(1.0, -x);
}

}  // namespace

std::vector<double> zero_mode_divergence_probe(const FieldVector& f, const std::vector<double>& alpha_cutoffs,
                                               double tau, const QuadratureConfig& quad) {
    require_massless(f);
    quad.validate();
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    const double norm = std::sqrt(2.0 * kTwoPi * kTwoPi * kTwoPi);
    const Interval line = line_support(f, 0.0, 0.0);
    const AdaptiveOptions opt = adaptive_options(quad, norm_bound(f));

    std::vector<double> out;
    for (double cut : alpha_cutoffs) {
        if (!(cut > 0.0)) throw DomainError("alpha cutoffs must be positive");
        cplx total{};
        for (double s : {1.0, -1.0}) {
            if (line.empty()) break;
            const double hi = s > 0.0 ? line.hi : -line.lo;
            const double lo = std::max(0.0, s > 0.0 ? line.lo : -line.hi);
            if (!(hi > lo)) continue;
            // k^y = s u^2. The alpha integral becomes int e^{-iu}/u du between
            // tau u^2 e^{-L} and tau u^2 e^{L} for either sign of k^y.
            auto g = [&](double u) {
                const cplx a = amp(f, 0.0, s * u * u);
                if (a == cplx{}) return cplx{};
                const double c = tau * u * u;
                const cplx inner = exp_integral_tail(c * std::exp(-cut)) - exp_integral_tail(c * std::exp(cut));
                return 2.0 * a * inner / norm;
            };
            const auto r = integrate(g, std::sqrt(lo), std::sqrt(hi), opt);
            total += r.value;
        }
        out.push_back(std::abs(kTwoPi * total));
    }
    return out;
}

}  // namespace ccr
