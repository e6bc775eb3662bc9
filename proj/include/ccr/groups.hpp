#pragma once

#include "ccr/group_element.hpp"
#include "ccr/modes.hpp"

namespace ccr {

/// Bi-invariant measure on S^1 or on Z x R^2, fixed up to the overall scale.
struct HaarMeasure {
    enum class Kind { NormalizedCircle, CountingLebesgue };
    Kind kind = Kind::NormalizedCircle;
    double scale = 1.0;

    /// (scale / 2pi) d(angle)
    static HaarMeasure circle(double scale = 1.0) { return {Kind::NormalizedCircle, scale}; }
    /// scale * (counting on Z) x d(alpha) d(beta)
    static HaarMeasure bhp(double scale = 1.0) { return {Kind::CountingLebesgue, scale}; }
    void validate() const;
};

/// Phi_g f. The amplitude becomes
///   a'(k) = exp(i theta_g(k)) sqrt(omega(L_g^{-1} k) / omega(k)) a(L_g^{-1} k),
/// the factor making |a|^2 d^3k invariant. Rotations of packets with equal
/// x/y widths stay plain packets; other actions are recorded on the term.
/// Throws MassMismatch for a BHPElement acting on a massive field.
FieldVector apply_group(const GroupElement& g, const FieldVector& f);

}  // namespace ccr
