#pragma once

#include <Eigen/Dense>

#include "ccr/quadrature.hpp"

namespace ccr {

struct GaussianPacket;

/// coeff * exp(-(k - c)^T P (k - c) / 2 + i b^T k): the family of amplitudes
/// closed under rotations and translations. Used for closed-form overlaps.
class GaussianForm {
public:
    explicit GaussianForm(const GaussianPacket& p);
    GaussianForm(cplx coeff, const Eigen::Vector3d& center, const Eigen::Matrix3d& precision,
                 const Eigen::Vector3d& phase);

    /// a'(k) = a(R^{-1} k) for the rotation by `angle` about z.
    GaussianForm rotated(double angle) const;
    /// a'(k) = exp(i (2 pi n k^x + beta k^z)) a(k)
    GaussianForm translated(long n, double beta) const;

    cplx value(const Vec3& k) const;
    /// Analytic continuation to complex momenta.
    cplx value(const Eigen::Vector3cd& k) const;

    const Eigen::Vector3d& center() const { return center_; }
    const Eigen::Matrix3d& precision() const { return precision_; }
    const Eigen::Vector3d& phase() const { return phase_; }
    cplx coeff() const { return coeff_; }

private:
    cplx coeff_;
    Eigen::Vector3d center_;
    Eigen::Matrix3d precision_;
    Eigen::Vector3d phase_;
};

/// integral over R^3 of conj(a1(k)) a2(k) d^3k in closed form.
cplx overlap(const GaussianForm& a1, const GaussianForm& a2);

}  // namespace ccr
