#include <cmath>
#include <numbers>

#include "ccr/errors.hpp"
#include "ccr/reduction.hpp"

namespace ccr {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

AxisymmetricAmplitude::AxisymmetricAmplitude(FieldVector field, const QuadratureConfig& quad)
    : field_(std::move(field)), quad_(quad) {
    quad_.validate();
    if (field_.empty()) return;
    const Box3 box = field_support(field_);
    const double x = std::max(std::abs(box.lo[0]), std::abs(box.hi[0]));
    const double y = std::max(std::abs(box.lo[1]), std::abs(box.hi[1]));
    kappa_max_ = std::hypot(x, y);
    kz_range_ = {box.lo[2], box.hi[2]};
    for (const auto& t : field_.terms()) {
        norm_bound_ += t.l2_norm();
        peak_bound_ += std::abs(t.base.coeff);
    }
}

cplx AxisymmetricAmplitude::operator()(double kappa, double kz) const {
    if (kappa < 0.0) throw DomainError("kappa must be nonnegative");
    if (kappa == 0.0 || field_.empty()) return {};
    auto g = [&](double b) { return evaluate_amplitude(field_, {kappa * std::cos(b), kappa * std::sin(b), kz}); };
    const auto r = integrate_periodic(g, 0.0, kTwoPi, 0.1 * quad_.rel_tol,
                                      std::max(quad_.abs_tol, 1e-2 * quad_.rel_tol * kTwoPi * peak_bound_));
    if (!r.converged) throw QuadratureNonConvergence("angular projection did not converge", r.error);
    return std::sqrt(kappa) / kTwoPi * r.value;
}

AxisymmetricAmplitude project_axisymmetric(const FieldVector& f, const QuadratureConfig& quad) {
    return AxisymmetricAmplitude(f, quad);
}

ReducedForms reduced_forms_axisym(const AxisymmetricAmplitude& a1, const AxisymmetricAmplitude& a2,
                                  const QuadratureConfig& quad) {
    if (a1.mass() != a2.mass()) throw MassMismatch("reduced forms need fields of equal mass");
    quad.validate();
    const double kappa_max = std::min(a1.kappa_max(), a2.kappa_max());
    const double z0 = std::max(a1.kz_range().lo, a2.kz_range().lo);
    const double z1 = std::min(a1.kz_range().hi, a2.kz_range().hi);
    if (!(kappa_max > 0.0) || !(z0 < z1)) return {};

    // |int int conj(A1) A2| <= ||a1|| ||a2|| / 2pi
    const AdaptiveOptions opt = adaptive_options(quad, a1.norm_bound() * a2.norm_bound() / kTwoPi);

    auto integrand = [&](double kappa, double kz) { return std::conj(a1(kappa, kz)) * a2(kappa, kz); };
    const auto r = integrate_rect(integrand, 0.0, kappa_max, z0, z1, opt);
    if (!r.converged) throw QuadratureNonConvergence("reduced axisymmetric forms did not converge", r.error);
    return {-2.0 * kTwoPi * r.value.imag(), kTwoPi * r.value.real(), 2.0 * kTwoPi * r.error};
}

}  // namespace ccr
