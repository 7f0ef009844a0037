#include <gtest/gtest.h>

#include "zak/wigner.hpp"

using namespace zak;

TEST(TileCoords, CountsEdgesAndCorners) {
    EXPECT_EQ(tile_coords(0.1, 0.1).size(), 1u);
    EXPECT_EQ(tile_coords(0.25, 0.1).size(), 2u);
    EXPECT_EQ(tile_coords(0.25, -0.75).size(), 4u);
    const auto t = tile_coords(0.6, -0.4)[0];
    EXPECT_EQ(t.a, 1);
    EXPECT_EQ(t.b, -1);
    EXPECT_NEAR(t.s, 0.2, 1e-15);
    EXPECT_NEAR(t.t, 0.2, 1e-15);
}

TEST(Wigner, ClosedFormsMatchOracle) {
    for (Convention c : all_conventions)
        for (auto [xi, eta] : {std::pair{0.1, 0.3}, std::pair{-0.33, 1.7}, std::pair{0.05, -0.6}}) {
            const auto o = wigner_integral_oracle(c, xi, eta);
            EXPECT_NEAR(wigner00(c, xi, eta), o.value, 1e-6) << to_char(c) << " " << xi << " " << eta;
        }
}

TEST(Wigner, BoxConventionVanishesOutsideStrip) {
    EXPECT_EQ(wigner00(Convention::B, 0.6, 0.3), 0.0);
    EXPECT_EQ(wigner00(Convention::A, 0.3, -0.6), 0.0);
    EXPECT_NEAR(wigner00(Convention::B, 0.0, 0.0), 2.0, 1e-15);
}

TEST(Wigner, ShiftedStatesFollowLabels) {
    const UnitsConfig u;
    for (Convention c : all_conventions) {
        const double x = 1.3 * u.x0(), p = -0.8 * u.p0();
        EXPECT_EQ(wigner_closed(c, 2, 1, x, p, u), wigner00(c, 1.3 - 1.0, -0.8 - 2.0));
    }
}

TEST(Wigner, ContinuousAcrossTileEdges) {
    // straddle every tile edge inside the plotted windows
    const double h = 5e-9;
    double worst = 0.0;
    for (double edge = -2.25; edge <= 2.25; edge += 0.5)
        for (double other = -2.2; other <= 2.2; other += 0.0731) {
            for (Convention c : {Convention::B, Convention::C}) {
                worst = std::max(worst, std::abs(wigner00(c, edge - h, other) - wigner00(c, edge + h, other)));
                worst = std::max(worst, std::abs(wigner00(c, other, edge - h) - wigner00(c, other, edge + h)));
            }
        }
    EXPECT_LT(worst, 1e-6);
}

TEST(Wigner, MarginalMatchesKernelSquare) {
    const auto r = wigner_marginal_p(Convention::C, 0.2, 2000);
    EXPECT_NEAR(r.value.real(), marginal_p_expected(Convention::C, 0.2), 1e-4);
}

TEST(WignerMap, GridAndContours) {
    const auto map = wigner_map(Convention::C, 0, 0, {-2.25, 2.25, -2.25, 2.25}, 91, 91);
    EXPECT_EQ(map.values.size(), 91u * 91u);
    EXPECT_NEAR(map.max(), 2.0, 1e-12);
    EXPECT_GE(map.min(), -2.0);
    const auto segs = contour_segments(map, 1.0);
    ASSERT_FALSE(segs.empty());
    for (const auto& s : segs) {
        EXPECT_LE(std::abs(s.from[0]), 2.25);
        EXPECT_LE(std::abs(s.to[1]), 2.25);
        // level-1 set sits close to the central peak
        EXPECT_LT(std::hypot(s.from[0], s.from[1]), 1.0);
    }
    EXPECT_THROW(wigner_map(Convention::C, 0, 0, {0, 1, 0, 1}, 1, 5), std::invalid_argument);
}
