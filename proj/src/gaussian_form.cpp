#include "ccr/gaussian_form.hpp"

#include <cmath>
#include <numbers>

#include "ccr/modes.hpp"

namespace ccr {

GaussianForm::GaussianForm(const GaussianPacket& p)
    : coeff_(p.coeff),
      center_(p.center[0], p.center[1], p.center[2]),
      precision_(Eigen::Vector3d(1.0 / (p.width[0] * p.width[0]), 1.0 / (p.width[1] * p.width[1]),
                                 1.0 / (p.width[2] * p.width[2]))
                     .asDiagonal()),
      phase_(Eigen::Vector3d::Zero()) {}

GaussianForm::GaussianForm(cplx coeff, const Eigen::Vector3d& center, const Eigen::Matrix3d& precision,
                           const Eigen::Vector3d& phase)
    : coeff_(coeff), center_(center), precision_(precision), phase_(phase) {}

GaussianForm GaussianForm::rotated(double angle) const {
    Eigen::Matrix3d r = Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    return GaussianForm(coeff_, r * center_, r * precision_ * r.transpose(), r * phase_);
}

GaussianForm GaussianForm::translated(long n, double beta) const {
    Eigen::Vector3d b = phase_;
    b.x() += 2.0 * std::numbers::pi * double(n);
    b.z() += beta;
    return GaussianForm(coeff_, center_, precision_, b);
}

cplx GaussianForm::value(const Vec3& k) const {
    const Eigen::Vector3d kv(k[0], k[1], k[2]);
    const Eigen::Vector3d d = kv - center_;
    return coeff_ * std::exp(cplx(-0.5 * d.dot(precision_ * d), phase_.dot(kv)));
}

cplx GaussianForm::value(const Eigen::Vector3cd& k) const {
    const Eigen::Vector3cd d = k - center_.cast<cplx>();
    const cplx quad = (d.transpose() * precision_.cast<cplx>() * d)(0, 0);
    const cplx lin = (phase_.cast<cplx>().transpose() * k)(0, 0);
    return coeff_ * std::exp(-0.5 * quad + cplx(0.0, 1.0) * lin);
}

cplx overlap(const GaussianForm& a1, const GaussianForm& a2) {
    // Shift k = m2 + u so the exponent is expressed through d = m1 - m2.
    const Eigen::Matrix3d q = a1.precision() + a2.precision();
    const Eigen::Vector3d d = a1.center() - a2.center();
    const Eigen::Vector3d db = a2.phase() - a1.phase();
    const Eigen::Vector3cd j = (a1.precision() * d).cast<cplx>() + cplx(0.0, 1.0) * db.cast<cplx>();
    const Eigen::LLT<Eigen::Matrix3d> llt(q);
    const Eigen::Vector3cd qinv_j = llt.solve(j);
    const cplx quad = (j.transpose() * qinv_j)(0, 0);
    const cplx exponent = 0.5 * quad - 0.5 * d.dot(a1.precision() * d) + cplx(0.0, db.dot(a2.center()));
    const double det = q.determinant();
    const double norm = std::pow(2.0 * std::numbers::pi, 1.5) / std::sqrt(det);
    return std::conj(a1.coeff()) * a2.coeff() * norm * std::exp(exponent);
}

}  // namespace ccr
