#include "ccr/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccr/errors.hpp"

namespace ccr {

cplx GaussianPacket::value(const Vec3& k) const {
    double e = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double d = (k[i] - center[i]) / width[i];
        e += d * d;
    }
    return coeff * std::exp(-0.5 * e);
}

double GaussianPacket::l2_norm() const {
    return std::abs(coeff) * std::sqrt(std::pow(std::numbers::pi, 1.5) * width[0] * width[1] * width[2]);
}

void GaussianPacket::validate() const {
    for (int i = 0; i < 3; ++i) {
        if (!(width[i] > 0.0) || !std::isfinite(width[i])) throw DomainError("packet widths must be positive");
        if (!std::isfinite(center[i])) throw DomainError("packet center must be finite");
    }
    if (!std::isfinite(coeff.real()) || !std::isfinite(coeff.imag()))
        throw DomainError("packet coefficient must be finite");
}

bool TransformedPacket::has_boost() const {
    for (const auto& g : actions)
        if (const auto* b = std::get_if<BHPElement>(&g); b && b->alpha != 0.0) return true;
    return false;
}

cplx TransformedPacket::value(const Vec3& k, double mass) const {
    Vec3 q = k;
    cplx factor{1.0, 0.0};
    for (auto it = actions.rbegin(); it != actions.rend(); ++it) {
        const double theta = translation_phase(*it, q);
        if (theta != 0.0) factor *= std::polar(1.0, theta);
        const Vec3 prev = inverse_momentum_map(*it, q, mass);
        if (const auto* b = std::get_if<BHPElement>(&*it); b && b->alpha != 0.0) {
            const double w = frequency(q, mass);
            if (w > 0.0) factor *= std::sqrt(frequency(prev, mass) / w);
        }
        q = prev;
    }
    return factor * base.value(q);
}

namespace {

Box3 rotate_box(const Box3& box, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Box3 out{{HUGE_VAL, HUGE_VAL, box.lo[2]}, {-HUGE_VAL, -HUGE_VAL, box.hi[2]}};
    for (double x : {box.lo[0], box.hi[0]}) {
        for (double y : {box.lo[1], box.hi[1]}) {
            const double rx = c * x - s * y, ry = s * x + c * y;
            out.lo[0] = std::min(out.lo[0], rx);
            out.hi[0] = std::max(out.hi[0], rx);
            out.lo[1] = std::min(out.lo[1], ry);
            out.hi[1] = std::max(out.hi[1], ry);
        }
    }
    return out;
}

// Smallest and largest |t| over [lo, hi].
double nearest_to_zero(double lo, double hi) { return (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi)); }
double farthest_from_zero(double lo, double hi) { return std::max(std::abs(lo), std::abs(hi)); }

// Image of the box under k^y -> k^y cosh a - omega sinh a. The map is
// increasing in k^y, so the extremes sit on the k^y faces with omega pushed
// to its extreme over (k^x, k^z).
Box3 boost_box(const Box3& box, double alpha, double mass) {
    const double ch = std::cosh(alpha), sh = std::sinh(alpha);
    const double xn = nearest_to_zero(box.lo[0], box.hi[0]), xf = farthest_from_zero(box.lo[0], box.hi[0]);
    const double zn = nearest_to_zero(box.lo[2], box.hi[2]), zf = farthest_from_zero(box.lo[2], box.hi[2]);
    auto w = [&](double x, double y, double z) { return std::sqrt(x * x + y * y + z * z + mass * mass); };
    Box3 out = box;
    const double ylo = box.lo[1], yhi = box.hi[1];
    if (sh >= 0.0) {
        out.lo[1] = ylo * ch - w(xf, ylo, zf) * sh;
        out.hi[1] = yhi * ch - w(xn, yhi, zn) * sh;
    } else {
        out.lo[1] = ylo * ch - w(xn, ylo, zn) * sh;
        out.hi[1] = yhi * ch - w(xf, yhi, zf) * sh;
    }
    return out;
}

}  // namespace

Box3 TransformedPacket::support(double mass) const {
    Box3 box;
    for (int i = 0; i < 3; ++i) {
        box.lo[i] = base.center[i] - kSupportSigmas * base.width[i];
        box.hi[i] = base.center[i] + kSupportSigmas * base.width[i];
    }
    for (const auto& g : actions) {
        if (const auto* r = std::get_if<RotationElement>(&g)) {
            box = rotate_box(box, r->angle);
        } else if (const auto* b = std::get_if<BHPElement>(&g); b->alpha != 0.0) {
            box = boost_box(box, b->alpha, mass);
        }
    }
    return box;
}

std::optional<GaussianForm> TransformedPacket::gaussian_form() const {
    if (has_boost()) return std::nullopt;
    GaussianForm form(base);
    for (const auto& g : actions) {
        if (const auto* r = std::get_if<RotationElement>(&g))
            form = form.rotated(r->angle);
        else {
            const auto& b = std::get<BHPElement>(g);
            form = form.translated(b.n, b.beta);
        }
    }
    return form;
}

FieldVector::FieldVector(double mass) : mass_(mass) {
    if (!(mass >= 0.0) || !std::isfinite(mass)) throw DomainError("mass must be nonnegative");
}

FieldVector::FieldVector(double mass, std::vector<TransformedPacket> terms, bool s0)
    : mass_(mass), terms_(std::move(terms)), s0_(s0) {
    if (!(mass >= 0.0) || !std::isfinite(mass)) throw DomainError("mass must be nonnegative");
    for (const auto& t : terms_) t.base.validate();
}

FieldVector FieldVector::packet(const GaussianPacket& p, double mass) {
    return FieldVector(mass, {TransformedPacket{p, {}}});
}

FieldVector FieldVector::marked_s0() const {
    double scale = 0.0;
    for (const auto& t : terms_) scale = std::max(scale, std::abs(t.base.coeff));
    for (int j = -200; j <= 200; ++j) {
        const double ky = 0.1 * j;
        if (std::abs(evaluate_amplitude(*this, {0.0, ky, 0.0})) > 1e-12 * scale)
            throw DomainError("amplitude does not vanish on the k^x = k^z = 0 axis");
    }
    return FieldVector(mass_, terms_, true);
}

FieldVector FieldVector::without_s0_flag() const { return FieldVector(mass_, terms_, false); }

cplx evaluate_amplitude(const FieldVector& f, const Vec3& k) {
    cplx sum{};
    for (const auto& t : f.terms()) sum += t.value(k, f.mass());
    return sum;
}

Box3 field_support(const FieldVector& f) {
    Box3 out{{HUGE_VAL, HUGE_VAL, HUGE_VAL}, {-HUGE_VAL, -HUGE_VAL, -HUGE_VAL}};
    for (const auto& t : f.terms()) {
        const Box3 b = t.support(f.mass());
        for (int i = 0; i < 3; ++i) {
            out.lo[i] = std::min(out.lo[i], b.lo[i]);
            out.hi[i] = std::max(out.hi[i], b.hi[i]);
        }
    }
    return out;
}

Interval line_support(const FieldVector& f, double kx, double kz) {
    Interval out{HUGE_VAL, -HUGE_VAL};
    for (const auto& t : f.terms()) {
        const Box3 b = t.support(f.mass());
        if (kx < b.lo[0] || kx > b.hi[0] || kz < b.lo[2] || kz > b.hi[2]) continue;
        out.lo = std::min(out.lo, b.lo[1]);
        out.hi = std::max(out.hi, b.hi[1]);
    }
    return out;
}

FieldVector add(const FieldVector& f1, const FieldVector& f2) {
    if (f1.mass() != f2.mass()) throw MassMismatch("cannot add fields of different mass");
    std::vector<TransformedPacket> terms = f1.terms();
    for (const auto& t : f2.terms()) {
        auto same_shape = [&](const TransformedPacket& u) {
            return u.base.center == t.base.center && u.base.width == t.base.width && u.actions == t.actions;
        };
        auto it = std::find_if(terms.begin(), terms.end(), same_shape);
        if (it == terms.end()) {
            terms.push_back(t);
            continue;
        }
        it->base.coeff += t.base.coeff;
        if (it->base.coeff == cplx{}) terms.erase(it);
    }
    return FieldVector(f1.mass(), std::move(terms), f1.in_s0() && f2.in_s0());
}

FieldVector scale(const FieldVector& f, double c) { return scale_complex(f, cplx(c, 0.0)); }

FieldVector scale_complex(const FieldVector& f, cplx c) {
    std::vector<TransformedPacket> terms = f.terms();
    for (auto& t : terms) t.base.coeff *= c;
    return FieldVector(f.mass(), std::move(terms), f.in_s0());
}

FieldVector antisymmetrize_kx(const FieldVector& f) {
    std::vector<TransformedPacket> terms = f.terms();
    for (const auto& t : f.terms()) {
        // M a(k) = a(-k^x, k^y, k^z). Conjugating by M flips rotation angles
        // and the sign of n and leaves boosts and z-translations alone.
        TransformedPacket m = t;
        m.base.center[0] = -m.base.center[0];
        m.base.coeff = -m.base.coeff;
        for (auto& g : m.actions) {
            if (auto* r = std::get_if<RotationElement>(&g))
                *r = make_rotation(-r->angle);
            else
                std::get<BHPElement>(g).n = -std::get<BHPElement>(g).n;
        }
        terms.push_back(std::move(m));
    }
    return FieldVector(f.mass(), std::move(terms), true);
}

FieldValue evaluate_field(const FieldVector& f, double t, const Vec3& x, const QuadratureConfig& quad) {
    quad.validate();
    FieldValue out;
    for (const auto& term : f.terms()) {
        auto amp = [&](const Vec3& k) { return term.value(k, f.mass()); };
        const auto v = mode_integral(amp, f.mass(), term.support(f.mass()), t, x,
                                     adaptive_options(quad, term.l2_norm()));
        out.value += v.value;
        out.error_estimate += v.error_estimate;
    }
    return out;
}

}  // namespace ccr
