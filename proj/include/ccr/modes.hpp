#pragma once

// Klein-Gordon solutions represented by their positive-frequency momentum
// amplitude a(k), built from Gaussian packets and lazily transformed copies.

#include <optional>
#include <vector>

#include "ccr/gaussian_form.hpp"
#include "ccr/group_element.hpp"
#include "ccr/quadrature.hpp"

namespace ccr {

/// coeff * exp(-sum_i (k_i - center_i)^2 / (2 width_i^2))
struct GaussianPacket {
    Vec3 center{0.0, 0.0, 0.0};
    Vec3 width{1.0, 1.0, 1.0};
    cplx coeff{1.0, 0.0};

    cplx value(const Vec3& k) const;
    /// (integral of |a|^2 d^3k)^(1/2)
    double l2_norm() const;
    void validate() const;
    bool operator==(const GaussianPacket&) const = default;
};

/// Number of widths beyond which a packet is treated as zero.
inline constexpr double kSupportSigmas = 9.0;

/// A base packet followed by a chain of group actions, applied front to back.
struct TransformedPacket {
    GaussianPacket base;
    std::vector<GroupElement> actions;

    cplx value(const Vec3& k, double mass) const;
    /// Axis-aligned box outside which |value| is negligible.
    Box3 support(double mass) const;
    /// Closed-form representation when no action in the chain is a boost.
    std::optional<GaussianForm> gaussian_form() const;
    bool has_boost() const;
    double l2_norm() const { return base.l2_norm(); }
    bool operator==(const TransformedPacket&) const = default;
};

class FieldVector {
public:
    FieldVector() = default;
    explicit FieldVector(double mass);
    FieldVector(double mass, std::vector<TransformedPacket> terms, bool s0 = false);

    static FieldVector packet(const GaussianPacket& p, double mass = 0.0);

    double mass() const { return mass_; }
    const std::vector<TransformedPacket>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Flag for the subspace a(0, k^y, 0) = 0 on which the group-averaged
    /// field exists.
    bool in_s0() const { return s0_; }

    /// Sets the S0 flag after checking a(0, k^y, 0) on a sample of k^y;
    /// throws DomainError if the amplitude does not vanish there.
    FieldVector marked_s0() const;
    FieldVector without_s0_flag() const;

private:
    double mass_ = 0.0;
    std::vector<TransformedPacket> terms_;
    bool s0_ = false;
};

cplx evaluate_amplitude(const FieldVector& f, const Vec3& k);

/// Bounding box of all term supports; empty for the zero field.
Box3 field_support(const FieldVector& f);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return !(lo < hi); }
};

/// Hull of the k^y ranges of the terms whose support meets the line
/// (k^x, ., k^z); empty when no term does.
Interval line_support(const FieldVector& f, double kx, double kz);

FieldVector add(const FieldVector& f1, const FieldVector& f2);
FieldVector scale(const FieldVector& f, double c);
/// Multiplies every coefficient by a complex factor. Complex scaling is not a
/// vector-space operation on real solutions; it backs apply_A.
FieldVector scale_complex(const FieldVector& f, cplx c);

inline FieldVector operator+(const FieldVector& a, const FieldVector& b) { return add(a, b); }
inline FieldVector operator-(const FieldVector& a, const FieldVector& b) { return add(a, scale(b, -1.0)); }
inline FieldVector operator*(double c, const FieldVector& f) { return scale(f, c); }

/// a(k) - a(-k^x, k^y, k^z): vanishes on the k^x = 0 plane, so the result is
/// flagged as lying in S0.
FieldVector antisymmetrize_kx(const FieldVector& f);

struct FieldValue {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// phi(t, x) = integral d^3k (2 omega (2pi)^3)^(-1/2) (a e^{i(k.x - omega t)} + c.c.)
/// Throws QuadratureNonConvergence when the budget is exhausted.
FieldValue evaluate_field(const FieldVector& f, double t, const Vec3& x, const QuadratureConfig& quad);

/// Mode integral for an arbitrary amplitude supported in `box`; used by
/// evaluate_field and by consistency checks on time-evolved amplitudes.
template <class Amplitude>
FieldValue mode_integral(Amplitude&& amplitude, double mass, const Box3& box, double t, const Vec3& x,
                         const AdaptiveOptions& opt) {
    constexpr double two_pi_cubed = 248.05021344239853;  // (2 pi)^3
    auto integrand = [&](const Vec3& k) {
        const double w = frequency(k, mass);
        if (w == 0.0) return cplx{};
        const double phase = k[0] * x[0] + k[1] * x[1] + k[2] * x[2] - w * t;
        return amplitude(k) * std::polar(1.0 / std::sqrt(2.0 * w * two_pi_cubed), phase);
    };
    auto r = integrate_box3(integrand, box, opt);
    if (!r.converged) throw QuadratureNonConvergence("mode integral did not converge", r.error);
    return {2.0 * r.value.real(), 2.0 * r.error};
}

}  // namespace ccr
