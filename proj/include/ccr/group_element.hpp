#pragma once

#include <variant>

#include "ccr/quadrature.hpp"

namespace ccr {

/// Rotation about the z axis; the angle is kept in [0, 2pi).
struct RotationElement {
    double angle = 0.0;
    bool operator==(const RotationElement&) const = default;
};

/// Element (n, alpha, beta) of Z x R^2: x-translation by 2 pi n, boost of
/// rapidity alpha along y, z-translation by beta.
struct BHPElement {
    long n = 0;
    double alpha = 0.0;
    double beta = 0.0;
    bool operator==(const BHPElement&) const = default;
};

using GroupElement = std::variant<RotationElement, BHPElement>;

RotationElement make_rotation(double angle);

/// Group law; throws GroupMismatch when the elements belong to different groups.
GroupElement compose(const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);
bool is_identity(const GroupElement& g);

/// Momentum map L_g of the action. Rotations act linearly; the boost takes
/// (omega, k^y) to (omega cosh a - k^y sinh a, k^y cosh a - omega sinh a).
Vec3 momentum_map(const GroupElement& g, const Vec3& k, double mass);
Vec3 inverse_momentum_map(const GroupElement& g, const Vec3& k, double mass);

/// Phase angle theta_g(k) = 2 pi n k^x + beta k^z picked up by the amplitude.
double translation_phase(const GroupElement& g, const Vec3& k);

inline double frequency(const Vec3& k, double mass) {
    return std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + mass * mass);
}

}  // namespace ccr
