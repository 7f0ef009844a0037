#pragma once

// Torus operators U, V, L, M on a finite (l, m) window, the matrix-element
// identities that tie L and M to X and P, and the modular decomposition.

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "zak/conventions.hpp"
#include "zak/line_state.hpp"
#include "zak/quadrature.hpp"
#include "zak/series.hpp"
#include "zak/zakmap.hpp"

namespace zak {

using SparseMatrix = Eigen::SparseMatrix<cplx>;

/// Basis |l, m> for l_lo <= l <= l_hi, m_lo <= m <= m_hi; row-major in l.
///   U|l,m> = |l-1,m>,  V|l,m> = |l,m-1>,  L|l,m> = l|l,m>,  M|l,m> = m|l,m>
struct OperatorWindow {
    long l_lo = 0, l_hi = 0, m_lo = 0, m_hi = 0;
    SparseMatrix U, V, L, M;

    long n_l() const { return l_hi - l_lo + 1; }
    long n_m() const { return m_hi - m_lo + 1; }
    long size() const { return n_l() * n_m(); }
    bool contains(long l, long m) const { return l >= l_lo && l <= l_hi && m >= m_lo && m <= m_hi; }
    Eigen::Index index(long l, long m) const { return Eigen::Index((l - l_lo) * n_m() + (m - m_lo)); }
    long l_of(Eigen::Index i) const { return l_lo + long(i) / n_m(); }
    long m_of(Eigen::Index i) const { return m_lo + long(i) % n_m(); }
    /// Rows and columns whose unit shifts in both indices stay inside.
    bool interior(Eigen::Index i) const {
        const long l = l_of(i), m = m_of(i);
        return l > l_lo && l < l_hi && m > m_lo && m < m_hi;
    }

    /// Matrix of a map |l,m> -> sum of (target, amplitude) pairs; targets
    /// outside the window are dropped.
    template <class Action>
    SparseMatrix build(const Action& act) const {
        std::vector<Eigen::Triplet<cplx>> trip;
        for (long l = l_lo; l <= l_hi; ++l)
            for (long m = m_lo; m <= m_hi; ++m)
                for (const auto& [tl, tm, amp] : act(l, m))
                    if (contains(tl, tm) && amp != cplx{}) trip.emplace_back(index(tl, tm), index(l, m), amp);
        SparseMatrix out(size(), size());
        out.setFromTriplets(trip.begin(), trip.end());
        return out;
    }

    static OperatorWindow make(long l_lo, long l_hi, long m_lo, long m_hi) {
        if (l_hi < l_lo || m_hi < m_lo) throw std::invalid_argument("operator window is empty");
        OperatorWindow w;
        w.l_lo = l_lo;
        w.l_hi = l_hi;
        w.m_lo = m_lo;
        w.m_hi = m_hi;
        struct Entry {
            long l, m;
            cplx amp;
        };
        using List = std::vector<Entry>;
        auto one = [](long l, long m, cplx a) { return List{{l, m, a}}; };
        w.U = w.build([&](long l, long m) { return one(l - 1, m, 1.0); });
        w.V = w.build([&](long l, long m) { return one(l, m - 1, 1.0); });
        w.L = w.build([&](long l, long m) { return one(l, m, double(l)); });
        w.M = w.build([&](long l, long m) { return one(l, m, double(m)); });
        return w;
    }

    /// Centred n x n window.
    static OperatorWindow centred(long n) { return make(-(n / 2), n - 1 - n / 2, -(n / 2), n - 1 - n / 2); }
};

/// Largest |entry| of A restricted to interior rows and columns.
inline double interior_max(const OperatorWindow& w, const SparseMatrix& a) {
    double r = 0.0;
    for (int k = 0; k < a.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(a, k); it; ++it)
            if (w.interior(it.row()) && w.interior(it.col())) r = std::max(r, std::abs(it.value()));
    return r;
}

inline SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix ab = a * b, ba = b * a;
    return ab - ba;
}

struct IdentityResidual {
    std::string identity;
    double residual;
};

/// [U,V] = 0, [U,L] = U, [V,M] = V, [U,M] = [V,L] = [M,L] = 0 and interior
/// unitarity of U and V.
inline std::vector<IdentityResidual> commutation_residuals(const OperatorWindow& w) {
    SparseMatrix id(w.size(), w.size());
    id.setIdentity();
    std::vector<IdentityResidual> out;
    out.push_back({"[U,V] = 0", interior_max(w, commutator(w.U, w.V))});
    out.push_back({"[U,L] = U", interior_max(w, SparseMatrix(commutator(w.U, w.L) - w.U))});
    out.push_back({"[V,M] = V", interior_max(w, SparseMatrix(commutator(w.V, w.M) - w.V))});
    out.push_back({"[U,M] = 0", interior_max(w, commutator(w.U, w.M))});
    out.push_back({"[V,L] = 0", interior_max(w, commutator(w.V, w.L))});
    out.push_back({"[M,L] = 0", interior_max(w, commutator(w.M, w.L))});
    const SparseMatrix ud = w.U.adjoint(), vd = w.V.adjoint();
    out.push_back({"U^dag U = 1", interior_max(w, SparseMatrix(ud * w.U - id))});
    out.push_back({"V^dag V = 1", interior_max(w, SparseMatrix(vd * w.V - id))});
    return out;
}

/// U^j V^k as a window matrix (negative powers through the adjoint).
inline SparseMatrix ladder_power(const OperatorWindow& w, long j, long k) {
    SparseMatrix out(w.size(), w.size());
    out.setIdentity();
    const SparseMatrix u = j >= 0 ? w.U : SparseMatrix(w.U.adjoint());
    const SparseMatrix v = k >= 0 ? w.V : SparseMatrix(w.V.adjoint());
    for (long i = 0; i < std::labs(j); ++i) out = u * out;
    for (long i = 0; i < std::labs(k); ++i) out = v * out;
    return out;
}

/// Deviation of U^j V^k |l,m> from |l-j, m-k> on the window.
inline double ladder_residual(const OperatorWindow& w, long j, long k, long l, long m) {
    if (!w.contains(l, m) || !w.contains(l - j, m - k)) throw std::out_of_range("ladder_residual: index outside window");
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(w.size());
    e(w.index(l, m)) = 1.0;
    Eigen::VectorXcd r = ladder_power(w, j, k) * e;
    r(w.index(l - j, m - k)) -= 1.0;
    return r.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// torus rotations and matrix elements

/// c_{l,m} -> exp(i(l alpha' - m beta')) c_{l,m}, i.e. Psi(alpha, beta) -> Psi(alpha + alpha', beta + beta').
inline DiscreteZakCoeffs rotate_torus(DiscreteZakCoeffs d, double alpha_p, double beta_p) {
    for (long l = d.l_lo; l <= d.l_hi; ++l)
        for (long m = d.m_lo; m <= d.m_hi; ++m) d.at(l, m) *= std::polar(1.0, double(l) * alpha_p - double(m) * beta_p);
    return d;
}

struct FlaggedValue {
    cplx value;
    bool on_line = false; ///< evaluated on a discontinuity line (half-sum value)
};

/// <x| exp(i alpha L - i beta M) |p> / <x|p>.
inline FlaggedValue lm_generator_element(Convention c, double x, double p, double alpha, double beta,
                                         const UnitsConfig& u = {}) {
    const double a0 = two_pi * u.xi(x), b0 = two_pi * u.eta(p);
    const TorusPoint left{a0 + alpha, b0}, right{a0, b0 - beta};
    FlaggedValue out;
    out.value = std::conj(chi(c, left)) * std::polar(1.0, 0.5 * (alpha * u.eta(p) - beta * u.xi(x))) * chi(c, right);
    out.on_line = line_distance(c, left) == 0.0 || line_distance(c, right) == 0.0;
    return out;
}

struct LMElements {
    double l_element;
    double m_element;
    bool on_line = false;
};

/// (<x|L|p>/<x|p>, <x|M|p>/<x|p>) from the smooth parts of the chi
/// derivatives; delta-line contributions are not included.
inline LMElements xlp_element(Convention c, double x, double p, const UnitsConfig& u = {}) {
    const double xi = u.xi(x), eta = u.eta(p);
    const double a = two_pi * xi, b = two_pi * eta;
    LMElements out;
    out.l_element = 0.5 * eta - chi_dalpha_smooth(c, a, b);
    out.m_element = 0.5 * xi - chi_dbeta_smooth(c, a, b);
    out.on_line = line_distance(c, {a, b}) == 0.0;
    return out;
}

/// Same elements from central differences of lm_generator_element at
/// alpha = beta = 0 (one Richardson level).
inline LMElements xlp_by_differences(Convention c, double x, double p, const UnitsConfig& u = {}, double h = 1e-5) {
    auto da = [&](double s) {
        return (lm_generator_element(c, x, p, s, 0.0, u).value - lm_generator_element(c, x, p, -s, 0.0, u).value) / (2.0 * s);
    };
    auto db = [&](double s) {
        return (lm_generator_element(c, x, p, 0.0, s, u).value - lm_generator_element(c, x, p, 0.0, -s, u).value) / (2.0 * s);
    };
    const cplx dl = (4.0 * da(0.5 * h) - da(h)) / 3.0;
    const cplx dm = (4.0 * db(0.5 * h) - db(h)) / 3.0;
    // d/d alpha gives i<L>, d/d beta gives -i<M>
    return {(dl / I).real(), (dm * I).real(), false};
}

// ---------------------------------------------------------------------------
// L and M as functions of X and P

namespace detail {

/// Integral of f over the line in position (momentum = false) or momentum
/// representation, split at the half-integer multiples of x0 (p0).
template <class F>
double line_integral(const LineState& s, bool momentum, const F& f) {
    const Support sup = momentum ? s.p_support() : s.x_support();
    const double unit = momentum ? s.units().p0() : s.units().x0();
    const QuadOptions opt{1e-14, 1e-13, 2000};
    if (!sup.heavy_tail) return integrate_pieces(f, lattice_breaks(sup.lo, sup.hi, 0.5 * unit, unit), opt).value;
    const double origin = unit * (std::floor(0.5 * (sup.lo + sup.hi) / unit) + 0.5);
    const int cells = int(std::ceil((sup.hi - sup.lo) / unit)) + 48;
    return integrate_line([&](double v) { return cplx(f(v)); }, origin, unit, {}, opt, cells).value.real();
}

/// sum_k (unit/2pi) conj(psi(v_k)) (S psi)(v_k) at v_k = unit (k + 1/2) with
///   (S psi)(v) = sum_{j>=1} b_j (psi(v + sign j unit) - psi(v - sign j unit))/2i.
/// `b` gives the coefficients; `terms` bounds j.
template <class Wf, class Coef>
double delta_sine_sum(const Wf& wf, Support sup, double unit, double sign, const Coef& b, long terms) {
    const long k_lo = long(std::floor(sup.lo / unit)) - 2, k_hi = long(std::ceil(sup.hi / unit)) + 1;
    const long span = k_hi - k_lo + 2;
    auto shifted = [&](double v) {
        cplx acc{};
        const long jmax = sup.heavy_tail ? terms : std::min(terms, span);
        for (long j = 1; j <= jmax; ++j) {
            const double bj = b(j);
            if (bj == 0.0) continue;
            acc += bj * (wf(v + sign * double(j) * unit) - wf(v - sign * double(j) * unit));
        }
        return acc / (2.0 * I);
    };
    auto term = [&](long k) {
        const double v = unit * (double(k) + 0.5);
        return std::conj(wf(v)) * shifted(v);
    };
    const auto r = lattice_sum(term, k_lo, k_hi, sup.heavy_tail);
    return unit / two_pi * r.value.real();
}

inline double sine_coefficient(long j) { return j == 1 ? 1.0 : 0.0; }

/// b_j = a_j - a_{-j}: sine coefficients of the two-sided half-sine series
/// folded onto j >= 1.
inline double folded_half_sine_coefficient(long j) { return half_sine_coefficient(j) - half_sine_coefficient(-j); }

} // namespace detail

struct LMExpectation {
    double l = 0.0;
    double m = 0.0;
};

/// <L> and <M> written through X and P, with the periodic delta reduced to
/// samples at half-integer multiples of x0 (p0) and the sine factors to
/// translations.  The delta comb and the sine factor commute in every
/// convention (both are functions of the same one of U, V, or the comb has
/// the period of the translations), so no ordering choice enters.
inline LMExpectation expectation_L_M(const LineState& s, Convention c, long half_sine_terms = 4000) {
    if (const auto* b = std::get_if<LineState::Basis>(&s.form()))
        if (b->convention == c) return {double(b->l), double(b->m)};
    const UnitsConfig& u = s.units();
    const double x0 = u.x0(), p0 = u.p0();
    auto px = [&](double x) { return std::norm(s.psi_x(x)); };
    auto pp = [&](double p) { return std::norm(s.psi_p(p)); };
    const double mean_x = detail::line_integral(s, false, [&](double x) { return x * px(x); }) / x0;
    const double mean_p = detail::line_integral(s, true, [&](double p) { return p * pp(p); }) / p0;
    const double round_x = detail::line_integral(s, false, [&](double x) { return closest_integer(x / x0) * px(x); });
    const double round_p = detail::line_integral(s, true, [&](double p) { return closest_integer(p / p0) * pp(p); });
    auto wx = [&](double x) { return s.psi_x(x); };
    auto wp = [&](double p) { return s.psi_p(p); };
    // the sine of X shifts momentum down, the sine of P shifts position up
    auto delta_in_x = [&](auto coef, long terms) {
        return detail::delta_sine_sum(wx, s.x_support(), x0, 1.0, coef, terms);
    };
    auto delta_in_p = [&](auto coef, long terms) {
        return detail::delta_sine_sum(wp, s.p_support(), p0, -1.0, coef, terms);
    };
    switch (c) {
    case Convention::A: return {round_p, mean_x - delta_in_p(detail::sine_coefficient, 1)};
    case Convention::B: return {mean_p - delta_in_x(detail::sine_coefficient, 1), round_x};
    default:
        return {0.5 * (mean_p + round_p) - delta_in_x(detail::folded_half_sine_coefficient, half_sine_terms),
                0.5 * (mean_x + round_x) - delta_in_p(detail::folded_half_sine_coefficient, half_sine_terms)};
    }
}

// ---------------------------------------------------------------------------
// X and P in the continuous Zak representation (convention (a))

class BoundaryBandError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct ZakXP {
    cplx x_by_transform; ///< Zak transform of x psi(x)
    cplx p_by_transform; ///< Zak transform of -i hbar psi'(x)
    cplx x_by_derivative;
    cplx p_by_derivative;
};

namespace detail {

/// Zak transform (given convention) of an arbitrary function supported in sup.
template <class F>
cplx zak_of_function(const F& f, Support sup, Convention c, double alpha, double beta, const UnitsConfig& u) {
    const double x0 = u.x0(), xi0 = alpha / two_pi;
    const long k0 = long(std::floor(sup.lo / x0 - xi0)) - 1, k1 = long(std::ceil(sup.hi / x0 - xi0)) + 1;
    cplx acc{};
    for (long k = k0; k <= k1; ++k) {
        const double xi = xi0 + double(k);
        acc += std::polar(1.0, -beta * xi) * f(x0 * xi);
    }
    return std::sqrt(x0) * std::conj(chi(c, alpha, beta)) * std::polar(1.0, alpha * beta / (4.0 * pi)) * acc;
}

template <class F>
cplx central_difference(const F& f, double h) {
    auto d = [&](double s) { return (f(s) - f(-s)) / (2.0 * s); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

} // namespace detail

/// <alpha,beta|X|psi> and <alpha,beta|P|psi> in convention (a), each by two
/// routes: transforming x psi and -i hbar psi', and the differential forms
///   X -> x0 (1/i)^{-1} d/dbeta = x0 i d/dbeta,  P -> p0 ((1/i) d/dalpha + beta/2pi - round(beta/2pi)).
/// The boundary term on beta = pi (mod 2pi) is not represented, so points
/// within `band` of that line are rejected.
inline ZakXP position_in_zak(const LineState& s, TorusPoint pt, double band = 1e-3, double h = 1e-5) {
    if (distance_to_odd_pi(pt.beta) < band)
        throw BoundaryBandError("position_in_zak: beta lies in the excluded band around pi mod 2pi");
    const UnitsConfig& u = s.units();
    const Support sup = s.x_support();
    if (sup.heavy_tail) throw std::invalid_argument("position_in_zak: state must be confined in position");
    const Convention c = Convention::A;
    const double hbar = u.hbar(), dx = 1e-3 * u.x0();
    auto dpsi = [&](double x) {
        if (const auto* g = std::get_if<LineState::Gaussian>(&s.form()))
            return (-(x - g->center) / (2.0 * g->width * g->width) + I * g->boost / hbar) * s.psi_x(x);
        return detail::central_difference([&](double t) { return s.psi_x(x + t); }, dx);
    };
    ZakXP out;
    out.x_by_transform = detail::zak_of_function([&](double x) { return x * s.psi_x(x); }, sup, c, pt.alpha, pt.beta, u);
    out.p_by_transform = detail::zak_of_function([&](double x) { return -I * hbar * dpsi(x); }, sup, c, pt.alpha, pt.beta, u);
    const cplx d_beta = detail::central_difference([&](double t) { return zak_value(s, c, pt.alpha, pt.beta + t); }, h);
    const cplx d_alpha = detail::central_difference([&](double t) { return zak_value(s, c, pt.alpha + t, pt.beta); }, h);
    const cplx psi = zak_value(s, c, pt.alpha, pt.beta);
    out.x_by_derivative = u.x0() * I * d_beta;
    out.p_by_derivative = u.p0() * (d_alpha / I + (pt.beta / two_pi - closest_integer(pt.beta / two_pi)) * psi);
    return out;
}

// ---------------------------------------------------------------------------
// modular position and momentum

struct ModularParts {
    double integer_part; ///< integer, or half-integer exactly at ties
    double modular_part; ///< |modular_part| <= unit/2
};

/// value = unit * integer_part + modular_part with integer_part = round(value/unit).
inline ModularParts modular_decompose(double value, double unit) {
    if (!(unit > 0.0)) throw std::invalid_argument("modular_decompose: unit must be positive");
    const double n = closest_integer(value / unit);
    return {n, value - unit * n};
}

/// Modular part as the principal logarithm of exp(2 pi i value/unit).
inline double modular_by_argument(double value, double unit) {
    return unit * std::arg(std::polar(1.0, two_pi * value / unit)) / two_pi;
}

struct ModularIdentification {
    double np_quadrature;   ///< <round(P/p0)> by momentum quadrature
    double l_coefficients;  ///< <L> of convention (a) from coefficients
    double nx_quadrature;   ///< <round(X/x0)> by position quadrature
    double m_coefficients;  ///< <M> of convention (b) from coefficients
    double max_residual() const {
        return std::max(std::abs(np_quadrature - l_coefficients), std::abs(nx_quadrature - m_coefficients));
    }
};

/// N_p = L of convention (a) and N_x = M of convention (b), each checked by
/// a direct quadrature against the discrete coefficient distribution.
inline ModularIdentification verify_modular_identification(const LineState& s) {
    const double x0 = s.units().x0(), p0 = s.units().p0();
    ModularIdentification r;
    r.np_quadrature = detail::line_integral(s, true, [&](double p) { return closest_integer(p / p0) * std::norm(s.psi_p(p)); });
    r.nx_quadrature = detail::line_integral(s, false, [&](double x) { return closest_integer(x / x0) * std::norm(s.psi_x(x)); });
    r.l_coefficients = index_mean(s, Convention::A, Axis::L).value;
    r.m_coefficients = index_mean(s, Convention::B, Axis::M).value;
    return r;
}

} // namespace zak
