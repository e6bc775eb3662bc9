#include <cmath>
#include <limits>
#include <numbers>

#include "ccr/errors.hpp"
#include "ccr/parallel.hpp"
#include "ccr/reduction.hpp"

namespace ccr {

ReducedSequence ReducedSequence::zeros(int n_max) {
    if (n_max < 0) throw DomainError("n_max must be nonnegative");
    ReducedSequence s;
    s.n_max = n_max;
    s.entries.assign(2 * n_max + 1, cplx{});
    s.errors.assign(2 * n_max + 1, 0.0);
    return s;
}

cplx ReducedSequence::at(long n) const {
    if (n < -n_max || n > n_max) return {};
    return entries[n + n_max];
}

cplx& ReducedSequence::at(long n) {
    if (n < -n_max || n > n_max) throw DomainError("index outside the truncation");
    return entries[n + n_max];
}

double ratio_tail(double m0, double m1, double m2) {
    if (m2 == 0.0) return 0.0;
    if (m0 == 0.0 || m1 == 0.0) return m2;
    const double r = std::sqrt(m2 / m0);
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    return m2 * r / (1.0 - r);
}

double ReducedSequence::tail_estimate() const {
    auto m = [&](long n) { return std::norm(at(n)) + (n != 0 ? std::norm(at(-n)) : 0.0); };
    if (n_max < 2) return m(n_max);
    return ratio_tail(m(n_max - 2), m(n_max - 1), m(n_max));
}

namespace {

QuadResult<cplx> line_integral(const FieldVector& f, long n, double lo, double hi, const AdaptiveOptions& opt) {
    const double n2 = double(n) * double(n);
    auto g = [&](double k) { return std::pow(n2 + k * k, -0.25) * evaluate_amplitude(f, {double(n), k, 0.0}); };
    return integrate(g, lo, hi, opt);
}

// integral over [p, q] (0 <= p < q) of k^(-1/2) a(0, sign k, 0) dk.
QuadResult<cplx> zero_mode_half(const FieldVector& f, double sign, double p, double q, const AdaptiveOptions& opt,
                                bool split) {
    if (split) {
        auto g = [&](double u) { return 2.0 * evaluate_amplitude(f, {0.0, sign * u * u, 0.0}); };
        return integrate(g, std::sqrt(p), std::sqrt(q), opt);
    }
    if (p == 0.0) throw SingularQuadrature("n = 0 projection meets k = 0; enable singularity_split");
    auto g = [&](double k) { return evaluate_amplitude(f, {0.0, sign * k, 0.0}) / std::sqrt(k); };
    return integrate(g, p, q, opt);
}

}  // namespace

ReducedSequence project_bhp(const FieldVector& f, int n_max, const QuadratureConfig& quad) {
    if (f.mass() != 0.0) throw MassMismatch("the Z x R^2 projection needs a massless field");
    quad.validate();
    ReducedSequence s = ReducedSequence::zeros(n_max);
    s.zero_mode_defined = f.in_s0();

    double scale = 0.0;
    for (const auto& t : f.terms()) scale += t.l2_norm();
    const AdaptiveOptions opt = adaptive_options(quad, scale);
    const cplx prefactor = cplx(0.0, -std::sqrt(2.0 * std::numbers::pi));

    auto entry = [&](std::size_t idx) -> QuadResult<cplx> {
        const long n = long(idx) - n_max;
        const Interval line = line_support(f, double(n), 0.0);
        if (line.empty()) return {};
        if (n != 0) return line_integral(f, n, line.lo, line.hi, opt);
        QuadResult<cplx> r;
        if (line.hi > 0.0) {
            auto p = zero_mode_half(f, 1.0, std::max(line.lo, 0.0), line.hi, opt, quad.singularity_split);
            r.value += p.value;
            r.error += p.error;
            r.converged = r.converged && p.converged;
        }
        if (line.lo < 0.0) {
            auto m = zero_mode_half(f, -1.0, std::max(-line.hi, 0.0), -line.lo, opt, quad.singularity_split);
            r.value += m.value;
            r.error += m.error;
            r.converged = r.converged && m.converged;
        }
        return r;
    };
    const auto results = parallel_map<QuadResult<cplx>>(s.entries.size(), entry);
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!results[i].converged)
            throw QuadratureNonConvergence("projection integral did not converge", results[i].error);
        s.entries[i] = prefactor * results[i].value;
        s.errors[i] = std::sqrt(2.0 * std::numbers::pi) * results[i].error;
    }
    return s;
}

namespace detail {

ReducedForms sum_pair_forms(const std::vector<std::pair<cplx, cplx>>& pairs) {
    cplx sum{};
    for (const auto& [x, y] : pairs) sum += std::conj(x) * y;
    return {-2.0 * sum.imag(), sum.real(), 0.0};
}

}  // namespace detail

ReducedForms reduced_forms_bhp(const ReducedSequence& s1, const ReducedSequence& s2) {
    if (s1.n_max != s2.n_max) throw DomainError("reduced sequences have different truncations");
    std::vector<std::pair<cplx, cplx>> pairs{{s1.at(0), s2.at(0)}};
    for (long n = 1; n <= s1.n_max; ++n) {
        pairs.emplace_back(s1.at(n), s2.at(n));
        pairs.emplace_back(s1.at(-n), s2.at(-n));
    }
    ReducedForms out = detail::sum_pair_forms(pairs);
    double err = 0.0;
    for (long n = -s1.n_max; n <= s1.n_max; ++n) {
        const std::size_t i = std::size_t(n + s1.n_max);
        err += std::abs(s1.entries[i]) * (i < s2.errors.size() ? s2.errors[i] : 0.0) +
               std::abs(s2.entries[i]) * (i < s1.errors.size() ? s1.errors[i] : 0.0);
    }
    out.error_estimate = 2.0 * err;
    return out;
}

}  // namespace ccr
