#include <gtest/gtest.h>

#include "zak/zakmap.hpp"

using namespace zak;

namespace {

double norm_x(const LineState& s, double lo, double hi) {
    return integrate([&](double x) { return std::norm(s.psi_x(x)); }, lo, hi, QuadOptions{1e-14, 1e-13, 4000}).value;
}

cplx fourier_at(const LineState& s, double p, double lo, double hi) {
    auto f = [&](double x) { return std::exp(-I * p * x) * s.psi_x(x); };
    return integrate(f, lo, hi, QuadOptions{1e-14, 1e-13, 4000}).value / std::sqrt(two_pi);
}

} // namespace

TEST(Gaussian, NormalizedInBothRepresentations) {
    const auto g = LineState::gaussian(0.7, 0.9, 1.3);
    EXPECT_NEAR(norm_x(g, -20, 20), 1.0, 1e-12);
    const double np = integrate([&](double p) { return std::norm(g.psi_p(p)); }, -20, 20, QuadOptions{1e-14, 1e-13, 4000}).value;
    EXPECT_NEAR(np, 1.0, 1e-12);
}

TEST(Gaussian, MomentumIsFourierTransform) {
    const auto g = LineState::gaussian(-0.4, 0.6, 0.8);
    for (double p : {-2.0, 0.0, 0.8, 3.1}) EXPECT_NEAR(std::abs(g.psi_p(p) - fourier_at(g, p, -15, 15)), 0.0, 1e-11) << p;
}

TEST(BasisState, MomentumOfBoxConvention) {
    // (b) is compact in x, so the Fourier integral is finite
    const UnitsConfig u;
    const auto s = LineState::basis(Convention::B, 2, -1, u);
    for (double p : {-3.0, 0.1, 2.5, 7.0}) {
        auto f = [&](double x) { return std::exp(-I * p * x) * s.psi_x(x); };
        const cplx ft = integrate(f, -1.5 * u.x0(), -0.5 * u.x0(), QuadOptions{1e-14, 1e-13, 400}).value / std::sqrt(two_pi);
        EXPECT_NEAR(std::abs(s.psi_p(p) - ft), 0.0, 1e-12) << p;
    }
    EXPECT_NEAR(norm_x(s, -1.5 * u.x0(), -0.5 * u.x0()), 1.0, 1e-13);
    EXPECT_EQ(s.psi_x(0.0), cplx(0.0));
}

TEST(Sampled, InterpolatesAndTransforms) {
    const auto g = LineState::gaussian(0.2, 0.7, 0.5);
    const double dx = 0.01;
    std::vector<cplx> v;
    for (int i = 0; i <= 1600; ++i) v.push_back(g.psi_x(-8.0 + dx * i));
    const auto s = LineState::sampled(-8.0, dx, v);
    for (double x : {-1.234, 0.0, 0.5555, 2.1}) EXPECT_NEAR(std::abs(s.psi_x(x) - g.psi_x(x)), 0.0, 1e-7) << x;
    for (double p : {-1.0, 0.5, 2.0}) EXPECT_NEAR(std::abs(s.psi_p(p) - g.psi_p(p)), 0.0, 1e-6) << p;
    EXPECT_EQ(s.psi_x(-9.0), cplx(0.0));
}

TEST(Superposition, IsRenormalized) {
    const auto a = LineState::gaussian(-1.0, 0.5, 0.0), b = LineState::gaussian(1.0, 0.5, 0.0);
    const auto s = LineState::superposition({{1.0, a}, {1.0, b}});
    EXPECT_NEAR(norm_x(s, -12, 12), 1.0, 1e-11);
    EXPECT_NEAR(std::abs(inner_product(s, s) - 1.0), 0.0, 1e-11);
}

TEST(Displaced, ActsAsUjVk) {
    const UnitsConfig u;
    const auto g = LineState::gaussian(0.3, 0.8, -0.4, u);
    const auto d = LineState::displaced(g, 2, -1);
    for (double x : {-2.0, 0.0, 1.7}) {
        const cplx want = std::exp(-I * 2.0 * u.p0() * x / u.hbar()) * g.psi_x(x - u.x0());
        EXPECT_NEAR(std::abs(d.psi_x(x) - want), 0.0, 1e-13);
    }
}

TEST(ZakValue, MatchesDirectLatticeSum) {
    const UnitsConfig u;
    const auto g = LineState::gaussian(0.5, 1.1, 0.9, u);
    for (Convention c : all_conventions)
        for (TorusPoint p : {TorusPoint{0.3, -1.2}, TorusPoint{2.5, 2.0}, TorusPoint{-3.0, 0.1}}) {
            const double xi0 = p.alpha / two_pi;
            cplx acc{};
            for (int k = -40; k <= 40; ++k) acc += std::exp(-I * p.beta * (xi0 + k)) * g.psi_x(u.x0() * (xi0 + k));
            const cplx want = std::sqrt(u.x0()) * std::conj(chi(c, p)) * std::exp(I * p.alpha * p.beta / (4.0 * pi)) * acc;
            EXPECT_NEAR(std::abs(zak_value(g, c, p.alpha, p.beta) - want), 0.0, 1e-12);
        }
}

TEST(ZakValue, QuasiPeriodicForAnyState) {
    const auto g = LineState::gaussian(0.5, 1.1, 0.9);
    for (Convention c : all_conventions) {
        const double a = 0.4, b = -1.1;
        const cplx z = zak_value(g, c, a, b);
        EXPECT_NEAR(std::abs(zak_value(g, c, a + two_pi, b) - z), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(zak_value(g, c, a, b + two_pi) - z), 0.0, 1e-12);
    }
}
