#include <cmath>
#include <numbers>
#include <set>

#include "ccr/errors.hpp"
#include "ccr/reduction.hpp"
#include "ccr/specfun.hpp"

namespace ccr {

cplx GowdySolution::zero_mode_value() const {
    if (!zero_mode) throw ZeroModeUndefined("no zero-mode coefficient was chosen for this solution");
    return *zero_mode;
}

GowdySolution gowdy_from_sequence(const ReducedSequence& s, std::optional<cplx> zero_mode) {
    GowdySolution psi;
    for (long n = 1; n <= s.n_max; ++n) {
        psi.coeffs[n] = s.at(n);
        psi.coeffs[-n] = s.at(-n);
    }
    psi.zero_mode = zero_mode;
    return psi;
}

GowdyForms gowdy_forms(const GowdySolution& psi1, const GowdySolution& psi2) {
    if (psi1.zero_mode.has_value() != psi2.zero_mode.has_value())
        throw ZeroModeUndefined("zero mode chosen for only one of the two solutions");
    long top = 0;
    for (const auto& [n, a] : psi1.coeffs) top = std::max(top, std::abs(n));
    for (const auto& [n, a] : psi2.coeffs) top = std::max(top, std::abs(n));

    auto coeff = [](const GowdySolution& p, long n) {
        auto it = p.coeffs.find(n);
        return it == p.coeffs.end() ? cplx{} : it->second;
    };
    std::vector<std::pair<cplx, cplx>> pairs;
    pairs.emplace_back(psi1.zero_mode.value_or(cplx{}), psi2.zero_mode.value_or(cplx{}));
    for (long n = 1; n <= top; ++n) {
        pairs.emplace_back(coeff(psi1, n), coeff(psi2, n));
        pairs.emplace_back(coeff(psi1, -n), coeff(psi2, -n));
    }
    const ReducedForms f = detail::sum_pair_forms(pairs);
    return {f.omega_hat, f.mu_hat};
}

double gowdy_evaluate(const GowdySolution& psi, double tau, double sigma) {
    if (!(tau > 0.0)) throw DomainError("Gowdy solutions live on tau > 0");
    cplx sum{};
    for (const auto& [n, a] : psi.coeffs) {
        if (n == 0 || a == cplx{}) continue;
        sum += a * hankel2_0(std::abs(double(n)) * tau) * std::polar(1.0, double(n) * sigma);
    }
    sum /= 2.0 * std::numbers::sqrt2;
    if (psi.zero_mode) sum += *psi.zero_mode * cplx(1.0, -std::log(tau)) / std::sqrt(4.0 * std::numbers::pi);
    return 2.0 * sum.real();
}

ZeroModeMap zero_mode_symplectic_map(const Eigen::Matrix2d& m) {
    if (!m.allFinite() || std::abs(m.determinant() - 1.0) > 1e-12)
        throw NonSymplectic("zero-mode map must have unit determinant");
    return {m};
}

ZeroModeMap zero_mode_squeeze(double s) {
    Eigen::Matrix2d m;
    m << std::exp(s), 0.0, 0.0, std::exp(-s);
    return zero_mode_symplectic_map(m);
}

ZeroModeMap zero_mode_rotation(double angle) {
    Eigen::Matrix2d m;
    m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return zero_mode_symplectic_map(m);
}

ZeroModeMap zero_mode_shear(double t) {
    Eigen::Matrix2d m;
    m << 1.0, t, 0.0, 1.0;
    return zero_mode_symplectic_map(m);
}

GowdySolution apply_zero_mode_map(const ZeroModeMap& map, const GowdySolution& psi) {
    GowdySolution out = psi;
    const cplx a0 = psi.zero_mode_value();
    const Eigen::Vector2d v = map.matrix * Eigen::Vector2d(a0.real(), a0.imag());
    out.zero_mode = cplx(v.x(), v.y());
    return out;
}

}  // namespace ccr
