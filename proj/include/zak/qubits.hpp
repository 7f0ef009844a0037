#pragma once

// Two toroidal qubits read off the discrete Zak coefficients: sigma acts on
// the parity of l (with U as the flip), tau on the parity of m (with V).

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "zak/operators.hpp"
#include "zak/zakmap.hpp"

namespace zak {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// <sigma>, <tau> and <sigma_i tau_j> together with the weight lost to the
/// coefficient window (added to every bound).
struct PauliExpectations {
    Vec3 a_vec{};
    Vec3 b_vec{};
    Mat3 T{};
    double leakage = 0.0;
};

namespace detail {

inline long parity(long n) { return ((n % 2) + 2) % 2; }

struct PauliImage {
    long index;
    cplx amp;
};

/// Pauli operator k (1, 2, 3) on the qubit carried by the parity of n:
/// label 0 (sigma_3 = +1) is n even, label 1 is n odd, n = 2 j + label.
inline PauliImage pauli_on_index(int k, long n) {
    const long s = parity(n);
    switch (k) {
    case 1: return {s == 0 ? n + 1 : n - 1, 1.0};
    case 2: return {s == 0 ? n + 1 : n - 1, s == 0 ? cplx(0, 1) : cplx(0, -1)};
    default: return {n, s == 0 ? 1.0 : -1.0};
    }
}

inline Eigen::Matrix2cd pauli_matrix(int k) {
    Eigen::Matrix2cd m;
    if (k == 0) m << 1, 0, 0, 1;
    else if (k == 1) m << 0, 1, 1, 0;
    else if (k == 2) m << 0, cplx(0, -1), cplx(0, 1), 0;
    else m << 1, 0, 0, -1;
    return m;
}

inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

} // namespace detail

/// Expectations of sigma_i (acting on l), tau_j (acting on m) and their
/// products, summed over the window after renormalizing it:
///   <A> = sum_{l,m} conj(c_{A(l,m)}) amp c_{l,m}.
/// Partners outside the window count as zero; the lost weight is `leakage`.
inline PauliExpectations pauli_expectations(const DiscreteZakCoeffs& d) {
    if (d.c.empty()) throw std::invalid_argument("pauli_expectations: empty coefficient window");
    const double w = d.weight();
    if (!(w > 0.0)) throw std::invalid_argument("pauli_expectations: coefficient window has zero weight");
    PauliExpectations e;
    e.leakage = std::max(0.0, 1.0 - w);
    // i, j in 0..3 with 0 the identity
    auto expect = [&](int i, int j) {
        cplx acc{};
        for (long l = d.l_lo; l <= d.l_hi; ++l)
            for (long m = d.m_lo; m <= d.m_hi; ++m) {
                const auto a = i == 0 ? detail::PauliImage{l, 1.0} : detail::pauli_on_index(i, l);
                const auto b = j == 0 ? detail::PauliImage{m, 1.0} : detail::pauli_on_index(j, m);
                acc += std::conj(d.at(a.index, b.index)) * a.amp * b.amp * d.at(l, m);
            }
        return acc.real() / w;
    };
    for (int i = 1; i <= 3; ++i) {
        e.a_vec[std::size_t(i - 1)] = expect(i, 0);
        e.b_vec[std::size_t(i - 1)] = expect(0, i);
        for (int j = 1; j <= 3; ++j) e.T[std::size_t(i - 1)][std::size_t(j - 1)] = expect(i, j);
    }
    return e;
}

/// rho = (1 + sigma.a + b.tau + sum_ij T_ij sigma_i tau_j)/4 in the product
/// basis |s t>, s the sigma label, t the tau label.
struct TwoQubitState {
    Eigen::Matrix4cd rho;
    PauliExpectations provenance;
};

inline TwoQubitState assemble_rho(const PauliExpectations& e) {
    using detail::kron;
    using detail::pauli_matrix;
    Eigen::Matrix4cd r = kron(pauli_matrix(0), pauli_matrix(0));
    for (int i = 1; i <= 3; ++i) {
        r += e.a_vec[std::size_t(i - 1)] * kron(pauli_matrix(i), pauli_matrix(0));
        r += e.b_vec[std::size_t(i - 1)] * kron(pauli_matrix(0), pauli_matrix(i));
        for (int j = 1; j <= 3; ++j) r += e.T[std::size_t(i - 1)][std::size_t(j - 1)] * kron(pauli_matrix(i), pauli_matrix(j));
    }
    return {0.25 * r, e};
}

/// Partial transpose on the second qubit.
inline Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd out;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
            for (int s2 = 0; s2 < 2; ++s2)
                for (int t2 = 0; t2 < 2; ++t2) out(2 * s + t, 2 * s2 + t2) = rho(2 * s + t2, 2 * s2 + t);
    return out;
}

enum class Verdict { Separable, Entangled, Indeterminate };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Separable: return "separable";
    case Verdict::Entangled: return "entangled";
    default: return "indeterminate";
    }
}

struct EntanglementReport {
    Verdict verdict;
    double min_pt_eigenvalue;
    double min_eigenvalue;
};

/// Peres-Horodecki test (exact for two qubits) with a dead-band of
/// 1e-10 plus the truncation leakage.
inline EntanglementReport entanglement_verdict(const TwoQubitState& s) {
    const double band = 1e-10 + s.provenance.leakage;
    const Eigen::Matrix4cd h = 0.5 * (s.rho + s.rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
    const Eigen::Matrix4cd pt = partial_transpose(h);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> ept(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
    EntanglementReport r;
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    r.min_pt_eigenvalue = ept.eigenvalues().minCoeff();
    if (r.min_eigenvalue < -band) r.verdict = Verdict::Indeterminate;
    else r.verdict = r.min_pt_eigenvalue < -band ? Verdict::Entangled : Verdict::Separable;
    return r;
}

/// sigma_k (k = 1..3) on the l index or tau_k on the m index as window matrices.
inline SparseMatrix pauli_window_matrix(const OperatorWindow& w, int k, bool on_m) {
    struct Entry {
        long l, m;
        cplx amp;
    };
    return w.build([&](long l, long m) {
        const auto im = detail::pauli_on_index(k, on_m ? m : l);
        return std::vector<Entry>{on_m ? Entry{l, im.index, im.amp} : Entry{im.index, m, im.amp}};
    });
}

/// sigma_k^2 = 1, sigma_1 sigma_2 = i sigma_3 (cyclic), the same for tau,
/// [sigma_i, tau_j] = 0 on the window interior, and vanishing traces of each
/// sigma over an even run of consecutive l at fixed m.
inline std::vector<IdentityResidual> pauli_algebra_check(const OperatorWindow& w) {
    if (w.n_l() < 6 || w.n_m() < 6) throw std::invalid_argument("pauli_algebra_check: window must be at least 6x6");
    SparseMatrix id(w.size(), w.size());
    id.setIdentity();
    std::array<SparseMatrix, 3> sg, tu;
    for (int k = 0; k < 3; ++k) {
        sg[std::size_t(k)] = pauli_window_matrix(w, k + 1, false);
        tu[std::size_t(k)] = pauli_window_matrix(w, k + 1, true);
    }
    std::vector<IdentityResidual> out;
    const char* sn[3] = {"sigma1", "sigma2", "sigma3"};
    const char* tn[3] = {"tau1", "tau2", "tau3"};
    for (int pass = 0; pass < 2; ++pass) {
        const auto& p = pass == 0 ? sg : tu;
        const char** nm = pass == 0 ? sn : tn;
        for (int k = 0; k < 3; ++k)
            out.push_back({std::string(nm[k]) + "^2 = 1", interior_max(w, SparseMatrix(p[std::size_t(k)] * p[std::size_t(k)] - id))});
        for (int k = 0; k < 3; ++k) {
            const int a = k, b = (k + 1) % 3, c = (k + 2) % 3;
            SparseMatrix prod = p[std::size_t(a)] * p[std::size_t(b)];
            SparseMatrix rhs = I * p[std::size_t(c)];
            out.push_back({std::string(nm[a]) + " " + nm[b] + " = i " + nm[c], interior_max(w, SparseMatrix(prod - rhs))});
        }
    }
    double comm = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) comm = std::max(comm, interior_max(w, commutator(sg[std::size_t(i)], tu[std::size_t(j)])));
    out.push_back({"[sigma_i, tau_j] = 0", comm});
    double tr = 0.0;
    for (int k = 0; k < 3; ++k)
        for (long m = w.m_lo + 1; m < w.m_hi; ++m)
            for (long l0 = w.l_lo + 1; l0 + 1 < w.l_hi; ++l0) {
                cplx acc{};
                for (long l = l0; l + 1 < w.l_hi; ++l) {
                    acc += sg[std::size_t(k)].coeff(w.index(l, m), w.index(l, m));
                    if ((l - l0) % 2 == 1) tr = std::max(tr, std::abs(acc));
                }
            }
    out.push_back({"even-run traces of sigma_i = 0", tr});
    return out;
}

} // namespace zak
