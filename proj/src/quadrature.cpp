#include "ccr/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ccr {

namespace detail {
namespace {

// Boost stores the non-negative half of each rule in ascending order; the
// driver wants descending abscissae with the Gauss weights aligned to them.
struct Gk21Tables {
    std::array<double, 11> xgk{};
    std::array<double, 11> wgk{};
    std::array<double, 5> wg{};

    Gk21Tables() {
        using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
        using gauss = boost::math::quadrature::gauss<double, 10>;
        const auto& ka = kronrod::abscissa();
        const auto& kw = kronrod::weights();
        const auto& gw = gauss::weights();
        for (int j = 0; j <= 10; ++j) {
            xgk[j] = ka[10 - j];
            wgk[j] = kw[10 - j];
        }
        for (int m = 0; m < 5; ++m) wg[m] = gw[4 - m];
    }
};

const Gk21Tables& tables() {
    static const Gk21Tables t;
    return t;
}

}  // namespace

std::span<const double> gk21_abscissae() { return tables().xgk; }
std::span<const double> gk21_kronrod_weights() { return tables().wgk; }
std::span<const double> gk21_gauss_weights() { return tables().wg; }

}  // namespace detail

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
    if (max_evals <= 0) throw DomainError("quadrature budget must be positive");
    if (!(alpha_cutoff > 0.0)) throw DomainError("alpha_cutoff must be positive");
    if (n_max < 1) throw DomainError("n_max must be at least 1");
}

AdaptiveOptions adaptive_options(const QuadratureConfig& quad, double scale) {
    AdaptiveOptions o;
    o.rel_tol = quad.rel_tol;
    o.abs_tol = std::max(quad.abs_tol, 1e-3 * quad.rel_tol * scale);
    o.max_evals = std::min<long>(quad.max_evals, 4'000'000);
    return o;
}

}  // namespace ccr
