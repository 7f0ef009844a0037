#include <gtest/gtest.h>

#include "zak/qubits.hpp"

using namespace zak;

namespace {

DiscreteZakCoeffs window_with(std::vector<std::tuple<long, long, cplx>> entries) {
    auto d = DiscreteZakCoeffs::zeros(Convention::A, -2, 2, -2, 2);
    for (auto [l, m, v] : entries) d.at(l, m) = v;
    return d;
}

} // namespace

TEST(Pauli, IndexActions) {
    EXPECT_EQ(detail::pauli_on_index(1, 4).index, 5);
    EXPECT_EQ(detail::pauli_on_index(1, -3).index, -4);
    EXPECT_EQ(detail::pauli_on_index(2, 0).amp, cplx(0, 1));
    EXPECT_EQ(detail::pauli_on_index(2, 1).amp, cplx(0, -1));
    EXPECT_EQ(detail::pauli_on_index(3, -1).amp, cplx(-1));
}

TEST(Pauli, ProductStateOddLabel) {
    const auto e = pauli_expectations(window_with({{1, 0, 1.0}}));
    EXPECT_NEAR(e.a_vec[2], -1.0, 1e-15);
    EXPECT_NEAR(e.b_vec[2], 1.0, 1e-15);
    EXPECT_NEAR(e.T[2][2], -1.0, 1e-15);
    EXPECT_EQ(entanglement_verdict(assemble_rho(e)).verdict, Verdict::Separable);
}

TEST(Pauli, OtherBellState) {
    const double r = 1.0 / std::sqrt(2.0);
    const auto e = pauli_expectations(window_with({{0, 1, r}, {1, 0, r}}));
    const double want[3] = {1.0, 1.0, -1.0};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(e.T[i][j], i == j ? want[i] : 0.0, 1e-15);
    const auto rep = entanglement_verdict(assemble_rho(e));
    EXPECT_EQ(rep.verdict, Verdict::Entangled);
    EXPECT_NEAR(rep.min_pt_eigenvalue, -0.5, 1e-12);
}

TEST(Pauli, LeakageWidensBand) {
    // partner of l = 2 under sigma_1 is l = 3, outside the window
    const auto e = pauli_expectations(window_with({{2, 0, 0.6}, {1, 0, 0.8}}));
    EXPECT_NEAR(e.leakage, 0.0, 1e-15);
    auto d = window_with({{2, 0, 0.6}});
    const auto f = pauli_expectations(d);
    EXPECT_NEAR(f.leakage, 1.0 - 0.36, 1e-15);
    EXPECT_THROW(pauli_expectations(DiscreteZakCoeffs::zeros(Convention::A, 0, 1, 0, 1)), std::invalid_argument);
}

TEST(Rho, MaximallyMixedAndPartialTranspose) {
    const TwoQubitState s = assemble_rho(PauliExpectations{});
    EXPECT_NEAR((s.rho - 0.25 * Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 0.0, 1e-16);
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Random();
    EXPECT_EQ((partial_transpose(partial_transpose(m)) - m).cwiseAbs().maxCoeff(), 0.0);
}

TEST(PauliAlgebra, ExactOnWindow) {
    for (const auto& r : pauli_algebra_check(OperatorWindow::centred(8))) EXPECT_EQ(r.residual, 0.0) << r.identity;
    EXPECT_THROW(pauli_algebra_check(OperatorWindow::centred(4)), std::invalid_argument);
}
