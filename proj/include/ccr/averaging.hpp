#pragma once

// Group averages of B(f1, Phi_g f2) over S^1 and over Z x R^2, and the
// group-averaged field of the Z x R^2 example.

#include <functional>
#include <vector>

#include "ccr/forms.hpp"
#include "ccr/groups.hpp"

namespace ccr {

struct AverageResult {
    cplx value;
    double error_estimate = 0.0;
    double tail_bound = 0.0;  // estimated truncation remainder
};

enum class FormKind { Omega, Mu };

/// Omega = -2 Im B, mu = Re B applied to an averaged B.
AverageResult form_part(FormKind kind, const AverageResult& b);

// ---------------------------------------------------------------------------
// S^1

/// (scale / 2pi) * integral over [0, 2pi) of B(f1, Phi_angle f2), by the
/// trapezoid rule with node doubling. Throws QuadratureNonConvergence.
AverageResult average_bform_circle(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad = {},
                                   const HaarMeasure& haar = HaarMeasure::circle());

/// The real part (mu) or -2 Im (Omega) of average_bform_circle.
AverageResult average_form_circle(FormKind kind, const FieldVector& f1, const FieldVector& f2,
                                  const QuadratureConfig& quad = {}, const HaarMeasure& haar = HaarMeasure::circle());

// ---------------------------------------------------------------------------
// Z x R^2

struct GroupGridNode {
    BHPElement g;
    double weight = 1.0;
    bool boundary = false;  // outermost node along some direction
};
using GroupGrid = std::vector<GroupGridNode>;

/// Product grid: n in [-n_max, n_max] (weight 1), trapezoid weights on
/// n_alpha points over [-alpha_max, alpha_max] and n_beta points over
/// [-beta_max, beta_max]. A direction with one point gets weight 1 at 0.
GroupGrid product_grid(int n_max, double alpha_max, int n_alpha, double beta_max, int n_beta);

/// scale * sum_nodes weight * B(f1, Phi_g f2), each B by 3D quadrature of
/// the transformed amplitude. tail_bound sums |weight * B| over boundary
/// nodes. Meant for small cross-check grids.
AverageResult average_bform_bhp_direct(const FieldVector& f1, const FieldVector& f2, const GroupGrid& grid,
                                       const QuadratureConfig& quad = {},
                                       const HaarMeasure& haar = HaarMeasure::bhp());

/// The integral over R^3 in the form with a1 evaluated at the boosted momentum:
///   -int d^3k (omega(k) omega(k, alpha))^(-1/2) conj(a1(k^x, l^y(alpha), k^z)) a2(k)
///        (dl^y/dalpha) e^{2 pi i k^x n + i k^z beta},
/// l^y(alpha) = k^y cosh(alpha) - omega(k) sinh(alpha). Equals B(f1, Phi_g f2).
BFormValue bform_boosted_integrand(const FieldVector& f1, const FieldVector& f2, const BHPElement& g,
                                   const QuadratureConfig& quad = {});

/// Average after the n and beta delta functions, boost integral kept:
///   2pi sum_m int dk^y conj(a1(m, k^y, 0)) int d alpha sqrt(omega'/omega) a2(m, l(alpha), 0)
/// with |alpha| <= quad.alpha_cutoff and |m| <= quad.n_max.
AverageResult average_bform_bhp_boost(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad = {},
                                      const HaarMeasure& haar = HaarMeasure::bhp());

/// 2pi sum_m int dl int dk conj(a1(m, l, 0)) a2(m, k, 0) / sqrt(omega(m, l) omega(m, k))
/// as a nested tanh-sinh double integral.
AverageResult average_bform_bhp_semianalytic(const FieldVector& f1, const FieldVector& f2,
                                             const QuadratureConfig& quad = {},
                                             const HaarMeasure& haar = HaarMeasure::bhp());

/// scale * sum_{|n| <= n_max} conj(A1_n) A2_n with a ratio-extrapolated tail.
AverageResult average_bform_bhp_reduced(const FieldVector& f1, const FieldVector& f2,
                                        const QuadratureConfig& quad = {},
                                        const HaarMeasure& haar = HaarMeasure::bhp());

struct SubstitutionCheck {
    double lhs = 0.0;  // int d alpha |dl/d alpha| h(l(alpha))
    double rhs = 0.0;  // int dl h(l)
};

/// Change of variables alpha -> l^y(alpha) at fixed k for a Gaussian
/// h(l) = exp(-(l - center)^2 / (2 width^2)).
SubstitutionCheck alpha_substitution_check(double center, double width, const Vec3& k, double mass,
                                           double alpha_cutoff);

struct PoissonCheck {
    cplx lhs;  // int_{-U}^{U} du sum_{|n| <= N} e^{2 pi i n u} h(u)
    double rhs = 0.0;  // sum_{|m| <= N} h(m)
};

PoissonCheck poisson_check(const std::function<double(double)>& h, int n_max, double u_cutoff);

// ---------------------------------------------------------------------------
// Averaged field

enum class FieldPath { Direct, Series };

struct FieldAverage {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Group average of the field at (tau, sigma), sum over 0 < |n| <= quad.n_max.
/// Direct: the boost integral is done on a deformed contour and the k^y
/// integral of the mode weight (2 omega (2pi)^3)^(-1/2) a(n, k^y, 0)
/// separately. Series: (1/(2 sqrt 2)) sum A_n H0(|n| tau) e^{i n sigma} + c.c.
/// Throws ZeroModeDivergence unless f carries the S0 flag.
FieldAverage average_field_bhp(const FieldVector& f, double tau, double sigma, const QuadratureConfig& quad = {},
                               FieldPath path = FieldPath::Series, const HaarMeasure& haar = HaarMeasure::bhp());

/// |2pi int dk^y (2|k^y| (2pi)^3)^(-1/2) a(0, k^y, 0) int_{-L}^{L} d alpha e^{-i tau |k^y| e^{-+alpha}}|
/// for each cutoff L: the n = 0 term the average drops, truncated.
std::vector<double> zero_mode_divergence_probe(const FieldVector& f, const std::vector<double>& alpha_cutoffs,
                                               double tau = 1.0, const QuadratureConfig& quad = {});

}  // namespace ccr
