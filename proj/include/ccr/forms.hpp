#pragma once

#include "ccr/modes.hpp"

namespace ccr {

/// Value of the sesquilinear form B with its quadrature error estimate.
struct BFormValue {
    cplx value;
    double error_estimate = 0.0;
};

/// Value of a real form (Omega or mu).
struct FormValue {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// B(f1, f2) = integral d^3k conj(a1(k)) a2(k). Term pairs without boosts
/// use the closed-form Gaussian overlap; the rest go through 3D quadrature
/// over the intersection of the term supports.
/// Throws MassMismatch, QuadratureNonConvergence.
BFormValue bform(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad = {});

/// Omega = -2 Im B
FormValue omega(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad = {});
/// mu = Re B
FormValue mu(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad = {});

struct BoundCheck {
    double lhs = 0.0;  // |Omega(f1, f2)| / 2
    double rhs = 0.0;  // sqrt(mu(f1, f1) mu(f2, f2))
    bool holds = true;
};

/// Relative slack allowed on the right-hand side of the quasi-free bound.
inline constexpr double kBoundTolerance = 1e-8;

BoundCheck qf_bound_check(const FieldVector& f1, const FieldVector& f2, const QuadratureConfig& quad = {});

/// Multiplication of the positive-frequency amplitude by i.
FieldVector apply_A(const FieldVector& f);

/// exp(-x / 2). Throws NegativeInput for x < 0.
double state_value(double mu_diagonal);

/// phase * W(vector), kept formal.
struct WeylWord {
    cplx phase{1.0, 0.0};
    FieldVector vector;
};

/// W(v1) W(v2) = exp(i Omega(v1, v2) / 2) W(v1 + v2)
WeylWord weyl_multiply(const WeylWord& w1, const WeylWord& w2, const QuadratureConfig& quad = {});
/// (p W(v))* = conj(p) W(-v)
WeylWord weyl_star(const WeylWord& w);

}  // namespace ccr
