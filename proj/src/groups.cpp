#include "ccr/groups.hpp"

#include <cmath>
#include <numbers>

#include "ccr/errors.hpp"

namespace ccr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};

}  // namespace

RotationElement make_rotation(double angle) {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return {a};
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
    if (g1.index() != g2.index()) throw GroupMismatch("cannot compose elements of different groups");
    if (const auto* r1 = std::get_if<RotationElement>(&g1))
        return make_rotation(r1->angle + std::get<RotationElement>(g2).angle);
    const auto& b1 = std::get<BHPElement>(g1);
    const auto& b2 = std::get<BHPElement>(g2);
    return BHPElement{b1.n + b2.n, b1.alpha + b2.alpha, b1.beta + b2.beta};
}

GroupElement inverse(const GroupElement& g) {
    return std::visit(overloaded{[](const RotationElement& r) -> GroupElement { return make_rotation(-r.angle); },
                                 [](const BHPElement& b) -> GroupElement {
                                     return BHPElement{-b.n, -b.alpha, -b.beta};
                                 }},
                      g);
}

bool is_identity(const GroupElement& g) {
    return std::visit(overloaded{[](const RotationElement& r) { return make_rotation(r.angle).angle == 0.0; },
                                 [](const BHPElement& b) { return b.n == 0 && b.alpha == 0.0 && b.beta == 0.0; }},
                      g);
}

Vec3 momentum_map(const GroupElement& g, const Vec3& k, double mass) {
    if (const auto* r = std::get_if<RotationElement>(&g)) {
        const double c = std::cos(r->angle), s = std::sin(r->angle);
        return {c * k[0] - s * k[1], s * k[0] + c * k[1], k[2]};
    }
    const auto& b = std::get<BHPElement>(g);
    if (b.alpha == 0.0) return k;
    const double w = frequency(k, mass);
    return {k[0], k[1] * std::cosh(b.alpha) - w * std::sinh(b.alpha), k[2]};
}

Vec3 inverse_momentum_map(const GroupElement& g, const Vec3& k, double mass) {
    if (const auto* r = std::get_if<RotationElement>(&g)) {
        const double c = std::cos(r->angle), s = std::sin(r->angle);
        return {c * k[0] + s * k[1], -s * k[0] + c * k[1], k[2]};
    }
    const auto& b = std::get<BHPElement>(g);
    if (b.alpha == 0.0) return k;
    const double w = frequency(k, mass);
    return {k[0], k[1] * std::cosh(b.alpha) + w * std::sinh(b.alpha), k[2]};
}

double translation_phase(const GroupElement& g, const Vec3& k) {
    if (const auto* b = std::get_if<BHPElement>(&g)) return kTwoPi * double(b->n) * k[0] + b->beta * k[2];
    return 0.0;
}

void HaarMeasure::validate() const {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("Haar measure scale must be positive");
}

FieldVector apply_group(const GroupElement& g, const FieldVector& f) {
    if (std::holds_alternative<BHPElement>(g) && f.mass() != 0.0)
        throw MassMismatch("the Z x R^2 action is defined on massless fields only");
    if (is_identity(g)) return f;

    std::vector<TransformedPacket> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        TransformedPacket out = t;
        const auto* rot = std::get_if<RotationElement>(&g);
        if (rot && out.actions.empty() && out.base.width[0] == out.base.width[1]) {
            // Isotropic in the rotation plane: rotating the center is exact.
            const double c = std::cos(rot->angle), s = std::sin(rot->angle);
            const Vec3 k = out.base.center;
            out.base.center = {c * k[0] - s * k[1], s * k[0] + c * k[1], k[2]};
        } else if (!out.actions.empty() && out.actions.back().index() == g.index()) {
            out.actions.back() = compose(out.actions.back(), g);
            if (is_identity(out.actions.back())) out.actions.pop_back();
        } else {
            out.actions.push_back(g);
        }
        terms.push_back(std::move(out));
    }
    // Rotations about z map the k^x = 0 plane to itself only for angle pi;
    // the Z x R^2 action preserves the plane.
    bool s0 = f.in_s0() && std::holds_alternative<BHPElement>(g);
    return FieldVector(f.mass(), std::move(terms), s0);
}

}  // namespace ccr
