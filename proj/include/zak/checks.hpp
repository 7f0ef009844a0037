#pragma once

// The numbered acceptance checks, shared by the acceptance test binary and
// `zak verify`.  Each criterion yields named rows of (residual, tolerance).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "zak/conventions.hpp"
#include "zak/line_state.hpp"
#include "zak/operators.hpp"
#include "zak/qubits.hpp"
#include "zak/wigner.hpp"
#include "zak/zakmap.hpp"

namespace zak {

struct CheckRow {
    std::string name;
    std::string identity;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass() const { return std::isfinite(residual) && residual <= tolerance; }
};

struct CriterionReport {
    int number = 0;
    std::string title;
    std::vector<CheckRow> rows;
    double seconds = 0.0;
    bool pass() const {
        return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass(); });
    }
};

struct CheckContext {
    std::uint64_t seed = 20240611;
    std::map<std::string, double> tolerance_overrides; ///< keyed by row name

    double tol(const std::string& row, double fallback) const {
        const auto it = tolerance_overrides.find(row);
        return it == tolerance_overrides.end() ? fallback : it->second;
    }
    std::mt19937_64 rng(std::uint64_t stream) const { return std::mt19937_64(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))); }
};

namespace detail {

inline std::string conv_suffix(Convention c) { return std::string(1, to_char(c)); }

inline void add_row(CriterionReport& rep, const CheckContext& ctx, std::string name, std::string identity,
                    double residual, double tol) {
    const double t = ctx.tol(name, tol);
    rep.rows.push_back({std::move(name), std::move(identity), residual, t});
}

/// Uniform torus point at least `min_dist` away from the discontinuity lines.
inline TorusPoint random_off_line(std::mt19937_64& g, Convention c, double half_range, double min_dist) {
    std::uniform_real_distribution<double> d(-half_range, half_range);
    for (;;) {
        const TorusPoint p{d(g), d(g)};
        if (line_distance(c, p) > min_dist) return p;
    }
}

/// Position in units of x0 avoiding the half-integer kernel jumps.
inline double random_off_half(std::mt19937_64& g, double half_range, double min_dist) {
    std::uniform_real_distribution<double> d(-half_range, half_range);
    for (;;) {
        const double v = d(g);
        if (std::abs(v - std::floor(v) - 0.5) > min_dist) return v;
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// 1: chi is unimodular and quasi-periodic

inline CriterionReport check_chi(const CheckContext& ctx) {
    CriterionReport rep{1, "chi unimodular and quasi-periodic", {}};
    for (Convention c : all_conventions) {
        auto g = ctx.rng(100 + std::uint64_t(c));
        double unimod = 0.0, per_a = 0.0, per_b = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const TorusPoint p = detail::random_off_line(g, c, 6.0 * pi, 1e-6);
            const cplx v = chi(c, p);
            unimod = std::max(unimod, std::abs(std::abs(v) - 1.0));
            per_a = std::max(per_a, std::abs(chi(c, p.alpha + two_pi, p.beta) * std::polar(1.0, -0.5 * p.beta) - v));
            per_b = std::max(per_b, std::abs(std::polar(1.0, 0.5 * p.alpha) * chi(c, p.alpha, p.beta + two_pi) - v));
        }
        const std::string s = detail::conv_suffix(c);
        detail::add_row(rep, ctx, "chi.unimodular." + s, "|chi| = 1", unimod, 1e-12);
        detail::add_row(rep, ctx, "chi.period_alpha." + s, "chi(a+2pi,b) e^{-ib/2} = chi(a,b)", per_a, 1e-12);
        detail::add_row(rep, ctx, "chi.period_beta." + s, "e^{ia/2} chi(a,b+2pi) = chi(a,b)", per_b, 1e-12);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// 2: lambda and mu closed forms against quadrature of chi

inline CriterionReport check_kernels(const CheckContext& ctx) {
    CriterionReport rep{2, "lambda, mu closed forms vs quadrature", {}};
    for (Convention c : all_conventions) {
        auto g = ctx.rng(200 + std::uint64_t(c));
        std::uniform_real_distribution<double> d(-8.0 * pi, 8.0 * pi);
        double err_l = 0.0, err_m = 0.0, im = 0.0;
        for (int i = 0; i < 200; ++i) {
            double gam = d(g);
            while (distance_to_odd_pi(gam) <= 1e-6) gam = d(g);
            const cplx ql = lambda_by_quadrature(c, gam).value, qm = mu_by_quadrature(c, gam).value;
            err_l = std::max(err_l, std::abs(ql - lambda_of(c, gam)));
            err_m = std::max(err_m, std::abs(qm - mu_of(c, gam)));
            im = std::max({im, std::abs(ql.imag()), std::abs(qm.imag())});
        }
        const std::string s = detail::conv_suffix(c);
        detail::add_row(rep, ctx, "kernel.lambda." + s, "lambda closed form = quadrature", err_l, 1e-9);
        detail::add_row(rep, ctx, "kernel.mu." + s, "mu closed form = quadrature", err_m, 1e-9);
        detail::add_row(rep, ctx, "kernel.imaginary." + s, "Im lambda = Im mu = 0", im, 1e-9);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// 3: the (c) kernel is its own Fourier transform

/// (1/2pi) int d alpha exp(-i alpha beta/2pi) lambda_C(alpha) under a Fejer
/// window: Cesaro mean of the symmetric truncations |alpha| <= 2pi(n + 1/2)
/// for n = 0..n_max.
inline double windowed_self_transform(double beta, long n_max = 512) {
    const QuadOptions opt{1e-13, 1e-12, 200};
    auto f = [&](double a) { return lambda_of(Convention::C, a) * std::cos(a * beta / two_pi); };
    auto cell = [&](double lo) { return integrate(f, lo, lo + two_pi, opt).value; };
    double partial = 2.0 * integrate(f, 0.0, pi, opt).value;
    double mean = 0.0;
    for (long n = 0; n <= n_max; ++n) {
        if (n > 0) partial += 2.0 * cell(two_pi * (double(n) - 0.5));
        mean += partial;
    }
    return mean / double(n_max + 1) / two_pi;
}

inline CriterionReport check_self_fourier(const CheckContext& ctx) {
    CriterionReport rep{3, "choice (c) kernel is self-Fourier", {}};
    double err = 0.0;
    for (int k = 0; k <= 80; ++k) {
        const double beta = -4.0 * pi + 8.0 * pi * double(k) / 80.0;
        err = std::max(err, std::abs(windowed_self_transform(beta) - mu_of(Convention::C, beta)));
    }
    detail::add_row(rep, ctx, "self_fourier.window", "windowed FT of lambda_C = mu_C on |beta| <= 4pi", err, 5e-3);
    const auto table = kernel_table(Convention::C, -8.0 * pi, 8.0 * pi, 1601);
    double at_zero = 1.0;
    for (const auto& s : table)
        if (s.gamma == 0.0) at_zero = std::abs(s.lambda - 1.0);
    detail::add_row(rep, ctx, "self_fourier.table_origin", "kernel table lambda_C(0) = 1 exactly", at_zero, 0.0);
    double same = 0.0;
    for (const auto& s : table) same = std::max(same, std::abs(s.lambda - s.mu));
    detail::add_row(rep, ctx, "self_fourier.table_symmetry", "kernel table lambda_C = mu_C", same, 0.0);
    return rep;
}

// ---------------------------------------------------------------------------
// 4: orthonormality of the discrete basis

/// <l,m|l',m'> by direct quadrature: the compact representation for (a)
/// and (b), a tail-accelerated line integral in position for (c).
inline QuadResult<cplx> basis_overlap(Convention c, long l1, long m1, long l2, long m2, const UnitsConfig& u = {}) {
    const QuadOptions opt{1e-15, 1e-14, 400};
    if (c == Convention::B || c == Convention::A) {
        const bool in_p = c == Convention::A;
        const double unit = in_p ? u.p0() : u.x0();
        const long a = in_p ? l1 : m1, b = in_p ? l2 : m2;
        if (a != b) return {};
        auto f = [&](double v) {
            return in_p ? std::conj(discrete_wf_p(c, l1, m1, v, u)) * discrete_wf_p(c, l2, m2, v, u)
                        : std::conj(discrete_wf_x(c, l1, m1, v, u)) * discrete_wf_x(c, l2, m2, v, u);
        };
        return integrate(f, unit * (double(a) - 0.5), unit * (double(a) + 0.5), opt);
    }
    auto f = [&](double x) { return std::conj(discrete_wf_x(c, l1, m1, x, u)) * discrete_wf_x(c, l2, m2, x, u); };
    const auto r = integrate_line(f, -0.5 * u.x0(), u.x0(), {}, QuadOptions{1e-13, 1e-12, 400}, 60);
    QuadResult<cplx> out;
    out.value = r.value;
    out.error = r.error;
    return out;
}

inline CriterionReport check_orthonormality(const CheckContext& ctx) {
    CriterionReport rep{4, "discrete basis orthonormal", {}};
    for (Convention c : all_conventions) {
        double err = 0.0;
        for (long l1 = -1; l1 <= 1; ++l1)
            for (long m1 = -1; m1 <= 1; ++m1)
                for (long l2 = -1; l2 <= 1; ++l2)
                    for (long m2 = -1; m2 <= 1; ++m2) {
                        if (std::pair(l2, m2) < std::pair(l1, m1)) continue; // Hermitian
                        const double want = (l1 == l2 && m1 == m2) ? 1.0 : 0.0;
                        err = std::max(err, std::abs(basis_overlap(c, l1, m1, l2, m2).value - want));
                    }
        detail::add_row(rep, ctx, "orthonormal." + detail::conv_suffix(c), "<l,m|l',m'> = delta delta", err,
                        c == Convention::C ? 1e-3 : 1e-12);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// 5: the discrete basis is unbiased with respect to the Zak basis

inline CriterionReport check_mub(const CheckContext& ctx) {
    CriterionReport rep{5, "discrete and continuous Zak bases mutually unbiased", {}};
    for (Convention c : all_conventions) {
        auto g = ctx.rng(500 + std::uint64_t(c));
        double err = 0.0;
        for (int i = 0; i < 100; ++i) {
            const TorusPoint p = detail::random_off_line(g, c, pi, 1e-6);
            for (long l = -2; l <= 2; ++l)
                for (long m = -2; m <= 2; ++m)
                    err = std::max(err, std::abs(std::abs(zak_value(LineState::basis(c, l, m), c, p.alpha, p.beta)) - 1.0));
        }
        detail::add_row(rep, ctx, "mub." + detail::conv_suffix(c), "|<alpha,beta|l,m>| = 1", err, 1e-9);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// 6: U^j V^k |l,m> = |l-j, m-k>

inline CriterionReport check_ladder(const CheckContext& ctx) {
    CriterionReport rep{6, "ladder law for U and V", {}};
    for (Convention c : all_conventions) {
        auto g = ctx.rng(600 + std::uint64_t(c));
        const UnitsConfig u;
        std::vector<double> xs, ps;
        for (int i = 0; i < 50; ++i) {
            xs.push_back(u.x0() * detail::random_off_half(g, 4.0, 1e-6));
            ps.push_back(u.p0() * detail::random_off_half(g, 4.0, 1e-6));
        }
        double err = 0.0;
        for (long j = -2; j <= 2; ++j)
            for (long k = -2; k <= 2; ++k)
                for (long l = -1; l <= 1; ++l)
                    for (long m = -1; m <= 1; ++m) {
                        const LineState moved = LineState::displaced(LineState::basis(c, l, m, u), j, k);
                        for (double x : xs)
                            err = std::max(err, std::abs(moved.psi_x(x) - discrete_wf_x(c, l - j, m - k, x, u)));
                        for (double p : ps)
                            err = std::max(err, std::abs(moved.psi_p(p) - discrete_wf_p(c, l - j, m - k, p, u)));
                    }
        detail::add_row(rep, ctx, "ladder." + detail::conv_suffix(c), "<x|U^j V^k|l,m> = <x|l-j,m-k>", err, 1e-12);
    }
    double mat = 0.0;
    const auto w = OperatorWindow::centred(9);
    for (long j = -2; j <= 2; ++j)
        for (long k = -2; k <= 2; ++k)
            for (long l = -1; l <= 1; ++l)
                for (long m = -1; m <= 1; ++m) mat = std::max(mat, ladder_residual(w, j, k, l, m));
    detail::add_row(rep, ctx, "ladder.window", "U^j V^k e_{l,m} = e_{l-j,m-k} on the index window", mat, 1e-12);
    return rep;
}

// ---------------------------------------------------------------------------
// 7: Wigner function closed forms

inline CriterionReport check_wigner(const CheckContext& ctx) {
    CriterionReport rep{7, "Wigner function closed forms", {}};
    struct Case {
        Convention c;
        Window2D w;
    };
    const Case cases[] = {{Convention::A, {-5.25, 5.25, -0.75, 0.75}},
                          {Convention::B, {-0.75, 0.75, -5.25, 5.25}},
                          {Convention::C, {-2.25, 2.25, -2.25, 2.25}}};
    double bound = 0.0;
    for (const auto& cs : cases) {
        const WignerMap map = wigner_map(cs.c, 0, 0, cs.w, 41, 41);
        double err = 0.0;
        for (std::size_t i = 0; i < map.x_grid.size(); ++i)
            for (std::size_t j = 0; j < map.p_grid.size(); ++j) {
                const double oracle = wigner_integral_oracle(cs.c, map.x_grid[i], map.p_grid[j]).value;
                err = std::max(err, std::abs(map.at(i, j) - oracle));
                bound = std::max(bound, std::abs(map.at(i, j)) - 2.0);
            }
        const std::string s = detail::conv_suffix(cs.c);
        detail::add_row(rep, ctx, "wigner.oracle." + s, "closed-form W_00 = integral over alpha", err, 1e-6);
        detail::add_row(rep, ctx, "wigner.origin." + s, "W_00(0,0) = 2", std::abs(wigner00(cs.c, 0.0, 0.0) - 2.0), 1e-9);
    }
    double tiles = 0.0;
    for (long a = -4; a <= 4; ++a)
        for (long b = -4; b <= 4; ++b)
            tiles = std::max(tiles, std::abs(wigner00(Convention::C, 0.5 * double(a), 0.5 * double(b)) -
                                             ((a == 0 && b == 0) ? 2.0 : 0.0)));
    detail::add_row(rep, ctx, "wigner.tile_centres.c", "W^(c)_00(a/2, b/2) = 2 delta_a0 delta_b0", tiles, 1e-9);
    auto g = ctx.rng(700);
    std::uniform_real_distribution<double> d(-4.0, 4.0);
    double sym_ab = 0.0, sym_cc = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double xi = d(g), eta = d(g);
        for (Convention c : all_conventions) bound = std::max(bound, std::abs(wigner00(c, xi, eta)) - 2.0);
        sym_ab = std::max(sym_ab, std::abs(wigner00(Convention::A, xi, eta) - wigner00(Convention::B, eta, xi)));
        sym_cc = std::max(sym_cc, std::abs(wigner00(Convention::C, xi, eta) - wigner00(Convention::C, eta, xi)));
    }
    detail::add_row(rep, ctx, "wigner.bound", "-2 <= W <= 2", std::max(0.0, bound), 0.0);
    detail::add_row(rep, ctx, "wigner.symmetry.ab", "W^(a)(x,p) = W^(b)(x0 p/p0, p0 x/x0)", sym_ab, 1e-12);
    detail::add_row(rep, ctx, "wigner.symmetry.cc", "W^(c)(x,p) = W^(c)(x0 p/p0, p0 x/x0)", sym_cc, 1e-12);
    return rep;
}

// ---------------------------------------------------------------------------
// 8: Wigner marginals and normalization

inline CriterionReport check_marginals(const CheckContext& ctx) {
    CriterionReport rep{8, "Wigner marginals and normalization", {}};
    const double pts[] = {0.0, 0.1, 0.3, 0.7, 1.2};
    for (Convention c : all_conventions) {
        double ep = 0.0, ex = 0.0;
        for (double v : pts) {
            ep = std::max(ep, std::abs(wigner_marginal_p(c, v).value.real() - marginal_p_expected(c, v)));
            ex = std::max(ex, std::abs(wigner_marginal_x(c, v).value.real() - marginal_x_expected(c, v)));
        }
        const std::string s = detail::conv_suffix(c);
        detail::add_row(rep, ctx, "marginal.p." + s, "int dp W/(2pi hbar) = |lambda|^2/x0", ep, 1e-3);
        detail::add_row(rep, ctx, "marginal.x." + s, "int dx W/(2pi hbar) = |mu|^2/p0", ex, 1e-3);
        detail::add_row(rep, ctx, "normalization." + s, "int dx dp W/(2pi hbar) = 1",
                        std::abs(wigner_normalization(c).value.real() - 1.0), 1e-3);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// 9: operator identities

/// <x|exp(i alpha L - i beta M)|p>/<x|p> from the truncated double sum
///   sqrt(x0 p0) e^{-ixp/hbar} sum_{l,m} <x|l,m> e^{i(l alpha - m beta)} <l,m|p>
/// with Fejer weights over |l - l_c| <= n.  In (b) only one m contributes
/// (the box in x), in (a) only one l (the box in p).
inline cplx unit_lm_fejer(Convention c, double x, double p, double alpha, double beta, long n, const UnitsConfig& u = {}) {
    if (c == Convention::C) throw std::invalid_argument("unit_lm_fejer: needs a convention with a compact representation");
    const double xi = u.xi(x), eta = u.eta(p);
    const bool box_x = c == Convention::B;
    const long fixed = nearest_label(box_x ? xi : eta);
    const long centre = nearest_label(box_x ? eta : xi);
    cplx acc{};
    for (long d = -n; d <= n; ++d) {
        const long free = centre + d;
        const long l = box_x ? free : fixed, m = box_x ? fixed : free;
        const double w = fejer_weight(d, n);
        acc += w * discrete_wf_x(c, l, m, x, u) * std::polar(1.0, double(l) * alpha - double(m) * beta) *
               std::conj(discrete_wf_p(c, l, m, p, u));
    }
    return std::sqrt(u.x0() * u.p0()) * std::polar(1.0, -x * p / u.hbar()) * acc;
}

inline CriterionReport check_operators(const CheckContext& ctx) {
    CriterionReport rep{9, "operator identities", {}};
    const auto w = OperatorWindow::centred(64);
    int k = 0;
    for (const auto& r : commutation_residuals(w))
        detail::add_row(rep, ctx, "operators.commutation." + std::to_string(++k), r.identity, r.residual, 0.0);
    k = 0;
    for (const auto& r : pauli_algebra_check(w))
        detail::add_row(rep, ctx, "operators.pauli." + std::to_string(++k), r.identity, r.residual, 0.0);

    const UnitsConfig u;
    auto g = ctx.rng(900);
    std::uniform_real_distribution<double> d(-3.0, 3.0), ang(-pi, pi);
    double fejer = 0.0;
    for (int i = 0; i < 100;) {
        const double xi = d(g), eta = d(g), alpha = ang(g), beta = ang(g);
        const double a0 = two_pi * xi, b0 = two_pi * eta;
        const Convention c = Convention::B;
        if (line_distance(c, {a0 + alpha, b0}) <= 0.05 || line_distance(c, {a0, b0 - beta}) <= 0.05 ||
            std::abs(xi - std::floor(xi) - 0.5) <= 0.05)
            continue;
        ++i;
        const double x = u.x0() * xi, p = u.p0() * eta;
        fejer = std::max(fejer, std::abs(unit_lm_fejer(c, x, p, alpha, beta, 20000, u) -
                                         lm_generator_element(c, x, p, alpha, beta, u).value));
    }
    detail::add_row(rep, ctx, "operators.unit_lm.b", "<x|e^{i alpha L - i beta M}|p>/<x|p> = chi* e^{...} chi", fejer, 1e-2);

    for (Convention c : all_conventions) {
        auto gc = ctx.rng(910 + std::uint64_t(c));
        double err = 0.0;
        for (int i = 0; i < 100;) {
            const double xi = d(gc), eta = d(gc);
            if (line_distance(c, {two_pi * xi, two_pi * eta}) <= 1e-3) continue;
            ++i;
            const auto a = xlp_element(c, u.x0() * xi, u.p0() * eta, u);
            const auto b = xlp_by_differences(c, u.x0() * xi, u.p0() * eta, u);
            err = std::max({err, std::abs(a.l_element - b.l_element), std::abs(a.m_element - b.m_element)});
        }
        detail::add_row(rep, ctx, "operators.xlp." + detail::conv_suffix(c), "<x|L|p>, <x|M|p> = derivatives of the generator",
                        err, 1e-6);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// 10: <L>, <M> through X and P against the coefficient distribution

/// The Gaussian test states (centre/x0, width/x0, boost/p0).
inline std::vector<LineState> test_gaussians(const UnitsConfig& u = {}) {
    const double x0 = u.x0(), p0 = u.p0();
    return {LineState::gaussian(0.3 * x0, 0.4 * x0, 0.2 * p0, u), LineState::gaussian(1.6 * x0, 0.25 * x0, 0.0, u),
            LineState::gaussian(-0.4 * x0, 0.8 * x0, 2.3 * p0, u)};
}

inline CriterionReport check_lm_routes(const CheckContext& ctx) {
    CriterionReport rep{10, "<L>, <M> from X, P equal the coefficient means", {}};
    const auto states = test_gaussians();
    for (Convention c : all_conventions) {
        double el = 0.0, em = 0.0;
        for (const auto& s : states) {
            const LMExpectation e = expectation_L_M(s, c);
            const double l = index_mean(s, c, Axis::L).value, m = index_mean(s, c, Axis::M).value;
            el = std::max(el, std::abs(e.l - l) / std::max(1.0, std::abs(l)));
            em = std::max(em, std::abs(e.m - m) / std::max(1.0, std::abs(m)));
        }
        const std::string s = detail::conv_suffix(c);
        detail::add_row(rep, ctx, "lm_routes.L." + s, "<L>(X,P) = sum l |c_lm|^2 (relative)", el, 1e-6);
        detail::add_row(rep, ctx, "lm_routes.M." + s, "<M>(X,P) = sum m |c_lm|^2 (relative)", em, 1e-6);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// 11: modular position and momentum

inline CriterionReport check_modular(const CheckContext& ctx) {
    CriterionReport rep{11, "modular decomposition and identifications", {}};
    auto g = ctx.rng(1100);
    std::uniform_real_distribution<double> d(-50.0, 50.0);
    const UnitsConfig u;
    double recon = 0.0, range = 0.0, arg = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double v = d(g);
        for (double unit : {u.x0(), u.p0()}) {
            const ModularParts mp = modular_decompose(v, unit);
            recon = std::max(recon, std::abs(unit * mp.integer_part + mp.modular_part - v));
            range = std::max(range, std::max(0.0, std::abs(mp.modular_part) - 0.5 * unit));
            range = std::max(range, std::abs(mp.integer_part - std::nearbyint(mp.integer_part)));
            arg = std::max(arg, std::abs(modular_by_argument(v, unit) - mp.modular_part));
        }
    }
    detail::add_row(rep, ctx, "modular.reconstruct", "x0 N_x + x_mod = x", recon, 0.0);
    detail::add_row(rep, ctx, "modular.range", "N integer, |x_mod| <= x0/2", range, 0.0);
    detail::add_row(rep, ctx, "modular.argument", "x_mod = x0 arg(e^{2pi i x/x0})/2pi", arg, 1e-12);
    double ident = 0.0;
    for (const auto& s : test_gaussians(u)) ident = std::max(ident, verify_modular_identification(s).max_residual());
    detail::add_row(rep, ctx, "modular.identification", "N_p = L^(a), N_x = M^(b)", ident, 1e-6);
    return rep;
}

// ---------------------------------------------------------------------------
// 12: two-qubit extraction

inline CriterionReport check_qubits(const CheckContext& ctx) {
    CriterionReport rep{12, "two-qubit extraction", {}};
    // |0,0> from its own coefficients
    const auto ground = coeffs_extract(LineState::basis(Convention::A, 0, 0), Convention::A, -2, 2, -2, 2);
    const auto pe = pauli_expectations(ground);
    const TwoQubitState prod = assemble_rho(pe);
    const auto vp = entanglement_verdict(prod);
    double dev = std::abs(pe.a_vec[2] - 1.0) + std::abs(pe.b_vec[2] - 1.0) + std::abs(pe.T[2][2] - 1.0);
    for (int i = 0; i < 2; ++i) dev += std::abs(pe.a_vec[std::size_t(i)]) + std::abs(pe.b_vec[std::size_t(i)]);
    detail::add_row(rep, ctx, "qubits.product", "|0,0>: a = b = e_3, T_33 = 1", dev, 1e-9);
    detail::add_row(rep, ctx, "qubits.product_verdict", "|0,0> separable",
                    vp.verdict == Verdict::Separable ? 0.0 : 1.0, 0.0);

    auto bell = DiscreteZakCoeffs::zeros(Convention::A, -2, 2, -2, 2);
    bell.at(0, 0) = bell.at(1, 1) = 1.0 / std::sqrt(2.0);
    const auto pb = pauli_expectations(bell);
    const TwoQubitState rb = assemble_rho(pb);
    const auto vb = entanglement_verdict(rb);
    double tdev = 0.0;
    const double want[3] = {1.0, -1.0, 1.0};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) tdev = std::max(tdev, std::abs(pb.T[i][j] - (i == j ? want[i] : 0.0)));
    detail::add_row(rep, ctx, "qubits.bell_T", "Bell state T = diag(1,-1,1)", tdev, 1e-9);
    detail::add_row(rep, ctx, "qubits.bell_pt", "min eigenvalue of rho^T_B = -1/2", std::abs(vb.min_pt_eigenvalue + 0.5), 1e-9);
    detail::add_row(rep, ctx, "qubits.bell_verdict", "Bell state entangled",
                    vb.verdict == Verdict::Entangled ? 0.0 : 1.0, 0.0);

    // random normalized windows: no leakage, so rho must be a state
    auto g = ctx.rng(1200);
    std::normal_distribution<double> n01;
    double trace = 0.0, herm = 0.0, pos = 0.0;
    auto account = [&](const TwoQubitState& s) {
        trace = std::max(trace, std::abs(s.rho.trace() - 1.0));
        herm = std::max(herm, (s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff());
        pos = std::max(pos, std::max(0.0, -entanglement_verdict(s).min_eigenvalue));
    };
    account(prod);
    account(rb);
    for (int i = 0; i < 200; ++i) {
        auto d = DiscreteZakCoeffs::zeros(Convention::A, -2, 3, -2, 3);
        double norm = 0.0;
        for (auto& v : d.c) {
            v = cplx(n01(g), n01(g));
            norm += std::norm(v);
        }
        for (auto& v : d.c) v /= std::sqrt(norm);
        account(assemble_rho(pauli_expectations(d)));
    }
    detail::add_row(rep, ctx, "qubits.trace", "tr rho = 1", trace, 1e-12);
    detail::add_row(rep, ctx, "qubits.hermitian", "rho = rho^dagger", herm, 1e-12);
    detail::add_row(rep, ctx, "qubits.positive", "rho >= -1e-10 without leakage", pos, 1e-10);
    return rep;
}

// ---------------------------------------------------------------------------

using CheckFn = std::function<CriterionReport(const CheckContext&)>;

inline const std::vector<CheckFn>& all_checks() {
    static const std::vector<CheckFn> list{check_chi,        check_kernels,  check_self_fourier, check_orthonormality,
                                           check_mub,        check_ladder,   check_wigner,       check_marginals,
                                           check_operators,  check_lm_routes, check_modular,     check_qubits};
    return list;
}

/// Runs one check and records its wall time; an exception becomes a failing row.
inline CriterionReport run_check(const CheckFn& f, const CheckContext& ctx, int number) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionReport r;
    try {
        r = f(ctx);
    } catch (const std::exception& e) {
        r.number = number;
        r.title = "check raised an exception";
        r.rows.push_back({"criterion" + std::to_string(number) + ".exception", e.what(), INFINITY, 0.0});
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

} // namespace zak
