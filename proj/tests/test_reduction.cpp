#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>

#include "ccr/averaging.hpp"
#include "ccr/errors.hpp"
#include "ccr/reduction.hpp"
#include "helpers.hpp"

using namespace ccr;
using namespace ccr::test;

TEST(ProjectBHP, MatchesScipyQuadrature) {
    // A_n = (sqrt(2pi)/i) int (n^2 + k^2)^(-1/4) a(n, k, 0) dk by scipy.integrate.quad.
    const auto f = packet({0.5, 0.3, 0.2}, {0.8, 1.0, 0.6}, {1.0, 0.5});
    const auto s = project_bhp(f, 4);
    EXPECT_FALSE(s.zero_mode_defined);
    const std::pair<long, cplx> ref[] = {{0, {4.111966407724268, -8.223932815448537}},
                                         {1, {2.1415015066087846, -4.283003013217569}},
                                         {2, {0.34458053795593335, -0.6891610759118667}},
                                         {-1, {0.4488831013864333, -0.8977662027728666}}};
    for (const auto& [n, v] : ref) EXPECT_LT(std::abs(s.at(n) - v), 1e-9 * std::abs(v)) << n;
}

TEST(ProjectBHP, S0HasNoZeroMode) {
    const auto s = project_bhp(antisymmetrize_kx(packet({0.5, 0.3, 0.2}, {0.8, 1.0, 0.6})), 4);
    EXPECT_LT(std::abs(s.at(0)), 1e-14);
}

TEST(ProjectBHP, Errors) {
    EXPECT_THROW(project_bhp(packet({0, 0, 0}, {1, 1, 1}, 1.0, 1.0), 4), MassMismatch);
    QuadratureConfig q;
    q.singularity_split = false;
    EXPECT_THROW(project_bhp(packet({0, 0, 0}, {1, 1, 1}), 4, q), SingularQuadrature);
}

TEST(ReducedBHP, Forms) {
    auto s1 = ReducedSequence::zeros(2), s2 = ReducedSequence::zeros(2);
    s1.at(1) = {1.0, 0.0};
    s2.at(1) = {0.0, 1.0};
    s2.at(-2) = {3.0, 0.0};
    const auto r = reduced_forms_bhp(s1, s2);
    EXPECT_EQ(r.mu_hat, 0.0);
    EXPECT_EQ(r.omega_hat, -2.0);  // i (conj(1) i - 1 conj(i)) = i (2i)
    EXPECT_EQ(reduced_forms_bhp(s2, s2).omega_hat, 0.0);
    EXPECT_EQ(reduced_forms_bhp(s2, s2).mu_hat, 10.0);
    EXPECT_THROW(reduced_forms_bhp(s1, ReducedSequence::zeros(3)), DomainError);
}

TEST(ReducedBHP, TailEstimate) {
    EXPECT_NEAR(ratio_tail(1.0, 0.5, 0.25), 0.25 * 0.5 / 0.5, 1e-15);
    EXPECT_TRUE(std::isinf(ratio_tail(1.0, 1.0, 2.0)));
}

TEST(Axisym, ProjectionOfRadialPacket) {
    // A radial packet at the origin: A(kappa, kz) = sqrt(kappa) a(kappa, 0, kz).
    const auto f = packet({0, 0, 0.3}, {0.9, 0.9, 0.7}, {0.4, 0.2}, 1.0);
    const auto a = project_axisymmetric(f);
    for (double kappa : {0.0, 0.5, 1.7})
        EXPECT_LT(std::abs(a(kappa, 0.1) - std::sqrt(kappa) * evaluate_amplitude(f, {kappa, 0.0, 0.1})), 1e-13);
}

TEST(Gowdy, SingleModeAtOrigin) {
    GowdySolution psi;
    psi.coeffs[1] = {1.0, 0.0};
    EXPECT_NEAR(gowdy_evaluate(psi, 1.0, 0.0), boost::math::cyl_bessel_j(0, 1.0) / std::sqrt(2.0), 1e-13);
    EXPECT_NEAR(gowdy_evaluate(psi, 1.0, 0.0), 0.54107, 1e-5);
}

TEST(Gowdy, FormsEqualReducedForms) {
    const auto s1 = project_bhp(antisymmetrize_kx(packet({0.5, 1.0, -0.3}, {0.7, 0.9, 1.1}, {0.8, 0.3})), 16);
    const auto s2 = project_bhp(antisymmetrize_kx(packet({-0.4, 0.2, 0.6}, {1.0, 0.6, 0.8}, {0.2, -1.1})), 16);
    const auto r = reduced_forms_bhp(s1, s2);
    const auto c = gowdy_forms(gowdy_from_sequence(s1), gowdy_from_sequence(s2));
    EXPECT_EQ(c.C, r.omega_hat);
    EXPECT_EQ(c.D, r.mu_hat);
    EXPECT_EQ(gowdy_forms(gowdy_from_sequence(s1), gowdy_from_sequence(s1)).C, 0.0);
}

TEST(Gowdy, ZeroMode) {
    GowdySolution psi;
    EXPECT_THROW(psi.zero_mode_value(), ZeroModeUndefined);
    GowdySolution with = psi;
    with.zero_mode = cplx(1.0, 0.0);
    EXPECT_THROW(gowdy_forms(psi, with), ZeroModeUndefined);
    // a0 (1 - i ln tau) / sqrt(4 pi) + c.c. at tau = 1
    EXPECT_NEAR(gowdy_evaluate(with, 1.0, 0.3), 2.0 / std::sqrt(4.0 * kPi), 1e-15);
}

TEST(Gowdy, ZeroModeMapsPreserveC) {
    GowdySolution p1, p2;
    p1.zero_mode = cplx(0.3, -1.2);
    p2.zero_mode = cplx(0.7, 0.4);
    const double c0 = gowdy_forms(p1, p2).C;
    for (const auto& m : {zero_mode_squeeze(0.8), zero_mode_rotation(1.1), zero_mode_shear(-2.0)}) {
        EXPECT_NEAR(gowdy_forms(apply_zero_mode_map(m, p1), apply_zero_mode_map(m, p2)).C, c0, 1e-14);
    }
    const auto id = zero_mode_symplectic_map(Eigen::Matrix2d::Identity());
    EXPECT_EQ(gowdy_forms(apply_zero_mode_map(id, p1), p2).D, gowdy_forms(p1, p2).D);
    Eigen::Matrix2d bad;
    bad << 2, 0, 0, 1;
    EXPECT_THROW(zero_mode_symplectic_map(bad), NonSymplectic);
}

TEST(NullSpace, SyntheticGram) {
    Eigen::MatrixXd mu(3, 3), om = Eigen::MatrixXd::Zero(3, 3);
    mu << 2, 1, 1, 1, 2, 1, 1, 1, 2;  // rank 3
    auto r = analyze_gram(mu, om);
    EXPECT_EQ(r.rank, 3);
    mu << 1, 1, 0, 1, 1, 0, 0, 0, 1;  // e0 - e1 is null
    r = analyze_gram(mu, om);
    EXPECT_EQ(r.rank, 2);
    EXPECT_TRUE(r.inclusion_holds);
    om << 0, 0, 1, 0, 0, 0, -1, 0, 0;  // Omega does not vanish on e0 - e1
    r = analyze_gram(mu, om);
    EXPECT_FALSE(r.inclusion_holds);
    EXPECT_THROW(analyze_gram(Eigen::MatrixXd(2, 3), Eigen::MatrixXd(2, 3)), DomainError);
}

TEST(NullSpace, GroupImageIsNull) {
    const auto f = packet({0.5, 1.0, -0.3}, {0.7, 0.9, 1.1}, {0.8, 0.3}, 1.0);
    const auto g = packet({-0.4, 0.2, 0.6}, {1.0, 0.6, 0.8}, {0.2, -1.1}, 1.0);
    const auto r = null_space_analysis({f, g, apply_group(make_rotation(0.9), f)}, GroupKind::Circle);
    EXPECT_EQ(r.rank, 2);
    EXPECT_TRUE(r.inclusion_holds);

    const auto s = antisymmetrize_kx(packet({0.5, 1.0, -0.3}, {0.7, 0.9, 1.1}, {0.8, 0.3}));
    const auto t = antisymmetrize_kx(packet({-0.4, 0.2, 0.6}, {1.0, 0.6, 0.8}, {0.2, -1.1}));
    const auto rb = null_space_analysis({s, t, apply_group(BHPElement{1, 0.4, -0.7}, s)}, GroupKind::BHP);
    EXPECT_EQ(rb.rank, 2);
    EXPECT_TRUE(rb.inclusion_holds);
}
