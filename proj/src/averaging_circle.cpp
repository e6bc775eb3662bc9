#include <cmath>
#include <numbers>

#include "ccr/averaging.hpp"
#include "ccr/errors.hpp"

namespace ccr {

AverageResult form_part(FormKind kind, const AverageResult& b) {
    if (kind == FormKind::Mu) return {cplx(b.value.real(), 0.0), b.error_estimate, b.tail_bound};
    return {cplx(-2.0 * b.value.imag(), 0.0), 2.0 * b.error_estimate, 2.0 * b.tail_bound};
}

AverageResult average_bform_circle(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad,
                                   const HaarMeasure& haar) {
    haar.validate();
    quad.validate();
    if (haar.kind != HaarMeasure::Kind::NormalizedCircle) throw DomainError("circle average needs a circle measure");
    if (f1.mass() != f2.mass()) throw MassMismatch("forms need fields of equal mass");
    constexpr double two_pi = 2.0 * std::numbers::pi;

    double scale = 0.0, node_error = 0.0;
    for (const auto& a : f1.terms())
        for (const auto& b : f2.terms()) scale += a.l2_norm() * b.l2_norm();
    auto g = [&](double angle) {
        const auto v = bform(f1, apply_group(make_rotation(angle), f2), quad);
        node_error = std::max(node_error, v.error_estimate);
        return v.value;
    };
    const double abs_tol = std::max(quad.abs_tol, 1e-3 * quad.rel_tol * scale) * two_pi;
    const auto r = integrate_periodic(g, 0.0, two_pi, quad.rel_tol, abs_tol);
    if (!r.converged) throw QuadratureNonConvergence("circle average did not converge", r.error);
    const double c = haar.scale / two_pi;
    return {c * r.value, c * (r.error + two_pi * node_error), 0.0};
}

AverageResult average_form_circle(FormKind kind, const FieldVector& f1, const FieldVector& f2,
                                  const QuadratureConfig& quad, const HaarMeasure& haar) {
    return form_part(kind, average_bform_circle(f1, f2, quad, haar));
}

}  // namespace ccr
