#pragma once

#include <cmath>
#include <numbers>

#include "ccr/modes.hpp"

namespace ccr::test {

inline constexpr double kPi = std::numbers::pi;

inline FieldVector packet(Vec3 center, Vec3 width, cplx coeff = {1.0, 0.0}, double mass = 0.0) {
    return FieldVector::packet(GaussianPacket{center, width, coeff}, mass);
}

// Closed form of int conj(a1) a2 d^3k for axis-aligned packets, one axis at
// a time: sqrt(2 pi s1^2 s2^2 / (s1^2 + s2^2)) exp(-(c1 - c2)^2 / (2 (s1^2 + s2^2))).
inline cplx separable_overlap(const GaussianPacket& p1, const GaussianPacket& p2) {
    cplx out = std::conj(p1.coeff) * p2.coeff;
    for (int i = 0; i < 3; ++i) {
        const double v1 = p1.width[i] * p1.width[i], v2 = p2.width[i] * p2.width[i];
        const double d = p1.center[i] - p2.center[i];
        out *= std::sqrt(2.0 * kPi * v1 * v2 / (v1 + v2)) * std::exp(-d * d / (2.0 * (v1 + v2)));
    }
    return out;
}

}  // namespace ccr::test
