#pragma once

#include <complex>

namespace ccr {

enum class SpecialMethod { Series, Asymptotic, Integral };

struct SpecialFunctionResult {
    std::complex<double> value;
    SpecialMethod method = SpecialMethod::Series;
    double error_estimate = 0.0;
    bool slow_convergence = false;  // integral representation with x < 0.1
};

/// Argument where evaluation switches from the power series to the
/// large-argument Hankel expansion.
inline constexpr double kBesselSeam = 17.0;

/// J0(x). Power series (extended precision) below the seam, Hankel
/// asymptotic expansion above it. Even in x.
double bessel_j0(double x);

/// Y0(x) for x > 0; throws DomainError otherwise.
double bessel_y0(double x);

/// J0 with the method used and an error estimate.
SpecialFunctionResult bessel_j0_detailed(double x);

/// H0^(2)(x) = J0(x) - i Y0(x), x > 0.
std::complex<double> hankel2_0(double x);
SpecialFunctionResult hankel2_0_detailed(double x);

/// Evaluates H0^(2)(x) = -(1/(pi i)) * integral over R of exp(-i x cosh s) ds.
/// The real segment |s| <= 3 is integrated directly; beyond it each tail is
/// moved onto the steepest-descent line Im s = -/+ pi/2, where the integrand
/// decays like exp(-x sinh|s|), and truncated at |s| = s_cutoff.
SpecialFunctionResult hankel2_0_integral(double x, double s_cutoff = 12.0);

/// Same integral computed as twice the s >= 0 half line.
SpecialFunctionResult hankel2_0_integral_half_line(double x, double s_cutoff = 12.0);

}  // namespace ccr
