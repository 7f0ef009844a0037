#include <gtest/gtest.h>

#include "zak/checks.hpp"

using namespace zak;

TEST(OperatorWindow, ShiftsAndDiagonals) {
    const auto w = OperatorWindow::centred(8);
    EXPECT_EQ(w.l_lo, -4);
    EXPECT_EQ(w.l_hi, 3);
    EXPECT_EQ(ladder_residual(w, 1, 0, 0, 0), 0.0);
    EXPECT_EQ(ladder_residual(w, -2, 1, 1, 2), 0.0);
    EXPECT_EQ(w.L.coeff(w.index(2, -1), w.index(2, -1)), cplx(2.0));
    EXPECT_EQ(w.M.coeff(w.index(2, -1), w.index(2, -1)), cplx(-1.0));
    EXPECT_EQ(w.U.coeff(w.index(-1, 0), w.index(0, 0)), cplx(1.0));
    EXPECT_THROW(ladder_residual(w, 3, 0, -3, 0), std::out_of_range);
}

TEST(OperatorWindow, CommutationRelationsExactOnInterior) {
    for (const auto& r : commutation_residuals(OperatorWindow::centred(16))) EXPECT_EQ(r.residual, 0.0) << r.identity;
}

TEST(Modular, DecompositionAndTies) {
    const auto a = modular_decompose(7.3, 2.0);
    EXPECT_EQ(a.integer_part, 4.0);
    EXPECT_NEAR(a.modular_part, -0.7, 1e-15);
    const auto t = modular_decompose(3.0, 2.0);
    EXPECT_EQ(t.integer_part, 1.5);
    EXPECT_EQ(t.modular_part, 0.0);
    EXPECT_NEAR(modular_by_argument(7.3, 2.0), -0.7, 1e-14);
    EXPECT_THROW(modular_decompose(1.0, 0.0), std::invalid_argument);
}

TEST(Generator, IdentityAtZeroAngles) {
    for (Convention c : all_conventions) {
        const auto v = lm_generator_element(c, 0.3, -0.8, 0.0, 0.0);
        EXPECT_NEAR(std::abs(v.value - 1.0), 0.0, 1e-15);
        EXPECT_FALSE(v.on_line);
    }
}

TEST(Generator, FejerDoubleSumAgrees) {
    const UnitsConfig u;
    const double x = 0.21 * u.x0(), p = -0.37 * u.p0();
    for (Convention c : {Convention::A, Convention::B})
        for (auto [al, be] : {std::pair{0.4, -0.9}, std::pair{-1.2, 2.0}}) {
            const cplx want = lm_generator_element(c, x, p, al, be, u).value;
            EXPECT_NEAR(std::abs(unit_lm_fejer(c, x, p, al, be, 20000, u) - want), 0.0, 1e-3) << to_char(c);
        }
    EXPECT_THROW(unit_lm_fejer(Convention::C, x, p, 0.1, 0.1, 10), std::invalid_argument);
}

TEST(Generator, MatrixElementsFromDifferences) {
    for (Convention c : all_conventions)
        for (auto [x, p] : {std::pair{0.5, -0.3}, std::pair{-1.9, 4.1}}) {
            const auto a = xlp_element(c, x, p), b = xlp_by_differences(c, x, p);
            EXPECT_NEAR(a.l_element, b.l_element, 1e-8);
            EXPECT_NEAR(a.m_element, b.m_element, 1e-8);
        }
}

TEST(PositionInZak, TransformAndDerivativeRoutesAgree) {
    const auto g = LineState::gaussian(0.3, 0.7, 0.5);
    for (TorusPoint pt : {TorusPoint{0.4, 0.9}, TorusPoint{-2.2, -1.7}}) {
        const auto r = position_in_zak(g, pt);
        EXPECT_NEAR(std::abs(r.x_by_transform - r.x_by_derivative), 0.0, 1e-8);
        EXPECT_NEAR(std::abs(r.p_by_transform - r.p_by_derivative), 0.0, 1e-8);
    }
    EXPECT_THROW(position_in_zak(g, {0.0, pi - 1e-4}), BoundaryBandError);
}

TEST(LMExpectation, BasisStatesReturnTheirLabels) {
    const auto e = expectation_L_M(LineState::basis(Convention::C, 3, -2), Convention::C);
    EXPECT_EQ(e.l, 3.0);
    EXPECT_EQ(e.m, -2.0);
    // a (b) state read in convention (b) through the X, P formulas
    const auto wrapped = LineState::displaced(LineState::basis(Convention::B, 1, 2), 0, 0);
    const auto f = expectation_L_M(wrapped, Convention::B);
    EXPECT_NEAR(f.m, 2.0, 1e-12);
}

TEST(LMExpectation, MatchesCoefficientMeansForGaussian) {
    const auto g = LineState::gaussian(-0.2, 0.6, 0.7);
    for (Convention c : all_conventions) {
        const auto e = expectation_L_M(g, c);
        EXPECT_NEAR(e.l, index_mean(g, c, Axis::L).value, 1e-8) << to_char(c);
        EXPECT_NEAR(e.m, index_mean(g, c, Axis::M).value, 1e-8) << to_char(c);
    }
}

TEST(Modular, IdentificationsHoldForGaussians) {
    for (const auto& s : test_gaussians()) EXPECT_LT(verify_modular_identification(s).max_residual(), 1e-9);
}
