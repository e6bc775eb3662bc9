#include "ccr/forms.hpp"

#include <cmath>
#include <limits>

#include "ccr/errors.hpp"

namespace ccr {

namespace {

BFormValue term_overlap(const TransformedPacket& t1, const TransformedPacket& t2, double mass,
                        const QuadratureConfig& quad) {
    const auto g1 = t1.gaussian_form();
    const auto g2 = t2.gaussian_form();
    const double scale = t1.l2_norm() * t2.l2_norm();
    if (g1 && g2) {
        const cplx v = overlap(*g1, *g2);
        return {v, 16.0 * std::numeric_limits<double>::epsilon() * scale};
    }
    const Box3 box = intersect(t1.support(mass), t2.support(mass));
    if (box.empty()) return {cplx{}, 0.0};
    auto integrand = [&](const Vec3& k) { return std::conj(t1.value(k, mass)) * t2.value(k, mass); };
    const auto r = integrate_box3(integrand, box, adaptive_options(quad, scale));
    if (!r.converged) throw QuadratureNonConvergence("overlap quadrature did not converge", r.error);
    return {r.value, r.error};
}

}  // namespace

BFormValue bform(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad) {
    if (f1.mass() != f2.mass()) throw MassMismatch("forms need fields of equal mass");
    quad.validate();
    const auto& t1 = f1.terms();
    const auto& t2 = f2.terms();
    BFormValue out{cplx{}, 0.0};
    if (t1 == t2) {
        // Hermitian case: pair (i, j) and (j, i) are conjugate, so the result
        // is real to the last bit.
        for (std::size_t i = 0; i < t1.size(); ++i) {
            const auto d = term_overlap(t1[i], t1[i], f1.mass(), quad);
            out.value += d.value.real();
            out.error_estimate += d.error_estimate;
            for (std::size_t j = i + 1; j < t1.size(); ++j) {
                const auto o = term_overlap(t1[i], t1[j], f1.mass(), quad);
                out.value += 2.0 * o.value.real();
                out.error_estimate += 2.0 * o.error_estimate;
            }
        }
        return out;
    }
    for (const auto& a : t1) {
        for (const auto& b : t2) {
            const auto o = term_overlap(a, b, f1.mass(), quad);
            out.value += o.value;
            out.error_estimate += o.error_estimate;
        }
    }
    return out;
}

FormValue omega(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad) {
    const auto b = bform(f1, f2, quad);
    return {-2.0 * b.value.imag(), 2.0 * b.error_estimate};
}

FormValue mu(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad) {
    const auto b = bform(f1, f2, quad);
    return {b.value.real(), b.error_estimate};
}

BoundCheck qf_bound_check(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad) {
    BoundCheck out;
    out.lhs = 0.5 * std::abs(omega(f1, f2, quad).value);
    const double m11 = mu(f1, f1, quad).value;
    const double m22 = mu(f2, f2, quad).value;
    out.rhs = std::sqrt(std::max(0.0, m11) * std::max(0.0, m22));
    out.holds = out.lhs <= out.rhs * (1.0 + kBoundTolerance);
    return out;
}

FieldVector apply_A(const FieldVector& f) { return scale_complex(f, cplx(0.0, 1.0)); }

double state_value(double mu_diagonal) {
    if (!(mu_diagonal >= 0.0)) throw NegativeInput("state value needs mu(phi, phi) >= 0");
    return std::exp(-0.5 * mu_diagonal);
}

WeylWord weyl_multiply(const WeylWord& w1, const WeylWord& w2, const QuadratureConfig& quad) {
    const double om = omega(w1.vector, w2.vector, quad).value;
    cplx phase = w1.phase * w2.phase * std::polar(1.0, 0.5 * om);
    phase /= std::abs(phase);
    return {phase, w1.vector + w2.vector};
}

WeylWord weyl_star(const WeylWord& w) { return {std::conj(w.phase), scale(w.vector, -1.0)}; }

}  // namespace ccr
