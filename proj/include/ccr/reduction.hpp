#pragma once

// Reduced phase spaces: projection of fields onto invariant data, reduced
// forms, numerical null spaces of averaged Gram matrices and the Gowdy
// picture of the Z x R^2 reduction.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ccr/modes.hpp"

namespace ccr {

struct ReducedForms {
    double omega_hat = 0.0;
    double mu_hat = 0.0;
    double error_estimate = 0.0;
};

// ---------------------------------------------------------------------------
// Axisymmetric reduction

/// A(kappa, k_z) = (sqrt(kappa) / 2pi) * integral over the circle of radius
/// kappa of a(kappa cos b, kappa sin b, k_z) db, evaluated lazily.
class AxisymmetricAmplitude {
public:
    AxisymmetricAmplitude(FieldVector field, const QuadratureConfig& quad);

    cplx operator()(double kappa, double kz) const;
    double kappa_max() const { return kappa_max_; }
    Interval kz_range() const { return kz_range_; }
    double mass() const { return field_.mass(); }
    /// Upper bound on the L2 norm of the underlying amplitude.
    double norm_bound() const { return norm_bound_; }

private:
    FieldVector field_;
    QuadratureConfig quad_;
    double kappa_max_ = 0.0;
    Interval kz_range_;
    double norm_bound_ = 0.0;
    double peak_bound_ = 0.0;
};

AxisymmetricAmplitude project_axisymmetric(const FieldVector& f, const QuadratureConfig& quad = {});

/// mu_hat = 2pi * int int Re(conj(A1) A2) dkappa dk_z,
/// omega_hat = 2pi i * int int (conj(A1) A2 - A1 conj(A2)).
ReducedForms reduced_forms_axisym(const AxisymmetricAmplitude& a1, const AxisymmetricAmplitude& a2,
                                  const QuadratureConfig& quad = {});

// ---------------------------------------------------------------------------
// Z x R^2 reduction

/// Truncated sequence A_n, n in [-n_max, n_max].
struct ReducedSequence {
    int n_max = 0;
    std::vector<cplx> entries;   // entries[n + n_max]
    std::vector<double> errors;  // quadrature error per entry
    bool zero_mode_defined = false;

    static ReducedSequence zeros(int n_max);
    cplx at(long n) const;
    cplx& at(long n);
    /// Truncation remainder of sum |A_n|^2 by ratio extrapolation of the
    /// last three magnitudes; +inf when they do not decrease.
    double tail_estimate() const;
};

/// A_n = (sqrt(2pi) / i) * integral dk (n^2 + k^2)^(-1/4) a(n, k, 0).
/// At n = 0 the integrable |k|^(-1/2) endpoint is removed by k = +-u^2 when
/// quad.singularity_split is set; otherwise a range containing k = 0 throws
/// SingularQuadrature. Throws MassMismatch for massive fields.
ReducedSequence project_bhp(const FieldVector& f, int n_max, const QuadratureConfig& quad = {});

/// Omega_hat = i sum (conj(A1) A2 - A1 conj(A2)), mu_hat = Re sum conj(A1) A2,
/// summed in ascending |n|. Throws DomainError on different truncations.
ReducedForms reduced_forms_bhp(const ReducedSequence& s1, const ReducedSequence& s2);

/// Ratio extrapolation of a decreasing tail from its last three magnitudes.
double ratio_tail(double m0, double m1, double m2);

namespace detail {
/// (Omega, mu) of sum conj(x) y over the pairs in the given order. Shared by
/// the reduced and Gowdy forms so both produce bit-identical sums.
ReducedForms sum_pair_forms(const std::vector<std::pair<cplx, cplx>>& pairs);
}  // namespace detail

// ---------------------------------------------------------------------------
// Null spaces

enum class GroupKind { Circle, BHP };

struct NullSpaceReport {
    std::vector<double> gram_mu_eigvals;     // ascending
    std::vector<double> gram_omega_on_null;  // max |Omega_G(e_i, v)| per null direction v
    int rank = 0;
    bool inclusion_holds = true;
    double gap_ratio = 0.0;  // smallest kept / largest dropped eigenvalue
    bool ill_conditioned = false;
    std::string warning;
};

inline constexpr double kRankThreshold = 1e-8;
inline constexpr double kNullTolerance = 1e-6;

/// Numerical rank of the mu Gram matrix (eigenvalues below 1e-8 of the
/// largest count as null) and the test null(mu) in null(Omega).
NullSpaceReport analyze_gram(const Eigen::MatrixXd& gram_mu, const Eigen::MatrixXd& gram_omega);

/// Builds the averaged Gram matrices over `fields` and analyzes them.
NullSpaceReport null_space_analysis(const std::vector<FieldVector>& fields, GroupKind group,
                                    const QuadratureConfig& quad = {});

// ---------------------------------------------------------------------------
// Gowdy solutions

/// psi = (1/sqrt(4pi)) a0 (1 - i ln tau) + (1/(2 sqrt 2)) sum_{n != 0} a_n H0(|n| tau) e^{i n sigma} + c.c.
struct GowdySolution {
    std::map<long, cplx> coeffs;  // n != 0
    std::optional<cplx> zero_mode;

    /// Throws ZeroModeUndefined when no zero mode was chosen.
    cplx zero_mode_value() const;
};

/// a_n = A_n for n != 0; the zero mode is left to the caller.
GowdySolution gowdy_from_sequence(const ReducedSequence& s, std::optional<cplx> zero_mode = std::nullopt);

struct GowdyForms {
    double C = 0.0;
    double D = 0.0;
};

/// C = i sum (conj(a1) a2 - a1 conj(a2)), D = Re sum conj(a1) a2. The n = 0
/// term enters only when both solutions carry a zero mode; throws
/// ZeroModeUndefined when exactly one does.
GowdyForms gowdy_forms(const GowdySolution& psi1, const GowdySolution& psi2);

double gowdy_evaluate(const GowdySolution& psi, double tau, double sigma);

/// Element of Sp(2, R) acting on (Re a0, Im a0).
struct ZeroModeMap {
    Eigen::Matrix2d matrix = Eigen::Matrix2d::Identity();
};

/// Throws NonSymplectic when |det - 1| > 1e-12.
ZeroModeMap zero_mode_symplectic_map(const Eigen::Matrix2d& m);
ZeroModeMap zero_mode_squeeze(double s);
ZeroModeMap zero_mode_rotation(double angle);
ZeroModeMap zero_mode_shear(double t);

GowdySolution apply_zero_mode_map(const ZeroModeMap& map, const GowdySolution& psi);

}  // namespace ccr
