#include <gtest/gtest.h>

#include "zak/conventions.hpp"

using namespace zak;

TEST(ClosestInteger, RoundsAndSplitsTies) {
    EXPECT_EQ(closest_integer(2.4), 2.0);
    EXPECT_EQ(closest_integer(-2.6), -3.0);
    EXPECT_EQ(closest_integer(2.5), 2.5);
    EXPECT_EQ(closest_integer(-0.5), -0.5);
    EXPECT_THROW(closest_integer(INFINITY), std::invalid_argument);
    EXPECT_EQ(nearest_label(0.5), 0);
    EXPECT_EQ(nearest_label(0.5000001), 1);
    EXPECT_EQ(branch_labels(1.5), (std::vector<long>{1, 2}));
}

TEST(ReduceToSquare, LandsInHalfOpenSquare) {
    const auto r = reduce_to_standard_square({3.0 * pi, -pi});
    EXPECT_EQ(r.a, 1);
    EXPECT_EQ(r.b, -1);
    EXPECT_DOUBLE_EQ(r.point.alpha, pi);
    EXPECT_DOUBLE_EQ(r.point.beta, pi);
    const auto s = reduce_to_standard_square({0.3, 7.0});
    EXPECT_EQ(s.b, 1);
    EXPECT_NEAR(s.point.beta, 7.0 - two_pi, 1e-15);
}

TEST(Chi, StandardSquareValues) {
    const double a = 1.1, b = -2.3;
    EXPECT_NEAR(std::abs(chi(Convention::A, a, b) - std::exp(I * a * b / (4.0 * pi))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(chi(Convention::B, a, b) - std::exp(-I * a * b / (4.0 * pi))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(chi(Convention::C, a, b) - 1.0), 0.0, 1e-15);
}

TEST(Chi, HalfSumOnJumpLines) {
    // alpha = pi: branches a = 0 and a = 1 at b = 0 give 1 and exp(i beta/2)
    const double b = 1.0;
    const cplx want = 0.5 * (1.0 + std::exp(0.5 * I * b));
    EXPECT_NEAR(std::abs(chi(Convention::C, pi, b) - want), 0.0, 1e-15);
    EXPECT_LT(std::abs(chi(Convention::C, pi, b)), 1.0);
}

TEST(Chi, QuasiPeriodicAcrossConventions) {
    for (Convention c : all_conventions)
        for (double a : {-5.0, 0.2, 2.9})
            for (double b : {-7.5, 0.7, 4.4}) {
                if (line_distance(c, {a, b}) < 1e-3) continue;
                EXPECT_NEAR(std::abs(chi(c, a + two_pi, b) * std::exp(-0.5 * I * b) - chi(c, a, b)), 0.0, 1e-13);
                EXPECT_NEAR(std::abs(std::exp(0.5 * I * a) * chi(c, a, b + two_pi) - chi(c, a, b)), 0.0, 1e-13);
            }
}

TEST(LineDistance, MeasuresDistanceToOddPi) {
    EXPECT_NEAR(distance_to_odd_pi(pi + 0.1), 0.1, 1e-15);
    EXPECT_NEAR(distance_to_odd_pi(0.0), pi, 1e-15);
    EXPECT_NEAR(line_distance(Convention::A, {pi, 0.2}), pi - 0.2, 1e-15);
    EXPECT_NEAR(line_distance(Convention::C, {pi - 0.01, 0.2}), 0.01, 1e-14);
}

TEST(Kernels, ClosedFormValues) {
    EXPECT_NEAR(lambda_of(Convention::A, pi), 2.0 / pi, 1e-15);
    EXPECT_EQ(lambda_of(Convention::B, 0.0), 1.0);
    EXPECT_EQ(lambda_of(Convention::B, pi), 0.5);
    EXPECT_EQ(lambda_of(Convention::B, 4.0), 0.0);
    EXPECT_EQ(mu_of(Convention::A, -pi), 0.5);
    EXPECT_EQ(lambda_of(Convention::C, 0.0), 1.0);
    const double jump = 0.5 * (std::sin(pi / 4) / (pi / 4) + std::sin(3 * pi / 4) / (3 * pi / 4));
    EXPECT_NEAR(lambda_of(Convention::C, pi), jump, 1e-15);
    EXPECT_NEAR(lambda_of(Convention::C, two_pi), 0.0, 1e-15);
    for (double g : {-9.0, -1.0, 0.4, 5.5}) EXPECT_EQ(lambda_of(Convention::C, g), mu_of(Convention::C, g));
}

TEST(Kernels, AgreeWithQuadratureOfChi) {
    for (Convention c : all_conventions)
        for (double g : {-20.0, -3.0, 0.0, 0.5, 2.0, 11.0}) {
            const auto l = lambda_by_quadrature(c, g);
            const auto m = mu_by_quadrature(c, g);
            EXPECT_NEAR(std::abs(l.value - lambda_of(c, g)), 0.0, 1e-10) << to_char(c) << " " << g;
            EXPECT_NEAR(std::abs(m.value - mu_of(c, g)), 0.0, 1e-10) << to_char(c) << " " << g;
        }
}

TEST(KernelTable, HitsZeroExactly) {
    const auto t = kernel_table(Convention::C, -8.0 * pi, 8.0 * pi, 1601);
    ASSERT_EQ(t.size(), 1601u);
    EXPECT_EQ(t[800].gamma, 0.0);
    EXPECT_EQ(t[800].lambda, 1.0);
    EXPECT_EQ(t.front().gamma, -8.0 * pi);
    EXPECT_EQ(t.back().gamma, 8.0 * pi);
    EXPECT_THROW(kernel_table(Convention::C, 1.0, 0.0, 5), std::invalid_argument);
}

TEST(Snc, LimitsAndDomain) {
    EXPECT_EQ(snc(0.3, 0.0), 0.3);
    EXPECT_NEAR(snc(1.0, 2.0), sinc(2.0), 1e-16);
    EXPECT_THROW(snc(1.5, 1.0), std::invalid_argument);
}

TEST(HalfSine, FoldedSeriesReproducesFunction) {
    // Fejer mean of sum_{j>=1} (a_j - a_{-j}) sin(j alpha)
    for (double a : {0.7, 2.0, -1.3, 4.0}) {
        const long n = 20000;
        double s = 0.0;
        for (long j = 1; j <= n; ++j)
            s += (1.0 - double(j) / double(n + 1)) * (half_sine_coefficient(j) - half_sine_coefficient(-j)) * std::sin(double(j) * a);
        EXPECT_NEAR(s, half_sine(a), 2e-3) << a;
    }
    EXPECT_EQ(half_sine(pi), 0.0);
}
