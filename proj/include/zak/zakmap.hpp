#pragma once

// The line <-> torus mapping: discrete Zak basis wavefunctions, the forward
// and inverse Zak transforms, and the discrete coefficients c_{l,m} = <l,m|psi>.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "zak/conventions.hpp"
#include "zak/line_state.hpp"
#include "zak/quadrature.hpp"
#include "zak/series.hpp"

namespace zak {

/// <x|l,m> = exp(i l p0 x/hbar) lambda(p0 x/hbar - 2 pi m)/sqrt(x0)
inline cplx discrete_wf_x(Convention c, long l, long m, double x, const UnitsConfig& u = {}) {
    const double xi = u.xi(x);
    return std::polar(1.0, two_pi * double(l) * xi) * lambda_of(c, two_pi * (xi - double(m))) / std::sqrt(u.x0());
}

/// <p|l,m> = exp(-i m x0 p/hbar) mu(x0 p/hbar - 2 pi l)/sqrt(p0)
inline cplx discrete_wf_p(Convention c, long l, long m, double p, const UnitsConfig& u = {}) {
    const double eta = u.eta(p);
    return std::polar(1.0, -two_pi * double(m) * eta) * mu_of(c, two_pi * (eta - double(l))) / std::sqrt(u.p0());
}

/// Psi(alpha, beta) = <alpha, beta|psi>, evaluated through the lattice sum
/// over x_k = x0 (alpha/2pi + k).
inline cplx zak_value(const LineState& s, Convention c, double alpha, double beta) {
    const double x0 = s.units().x0();
    const auto sum = s.lattice_sum(alpha / two_pi, beta);
    return std::sqrt(x0) * std::conj(chi(c, alpha, beta)) * std::polar(1.0, alpha * beta / (4.0 * pi)) * sum.value;
}

/// Torus samples at the cell centres of (-pi, pi) x (-pi, pi); row-major with
/// beta running fastest.
struct TorusField {
    Convention convention = Convention::A;
    UnitsConfig units{};
    int n_alpha = 0;
    int n_beta = 0;
    std::vector<cplx> values;
    long truncation_k = 0; ///< largest |k| used in the lattice sums

    double alpha(int i) const { return -pi + (double(i) + 0.5) * two_pi / double(n_alpha); }
    double beta(int j) const { return -pi + (double(j) + 0.5) * two_pi / double(n_beta); }
    cplx& at(int i, int j) { return values[std::size_t(i) * std::size_t(n_beta) + std::size_t(j)]; }
    const cplx& at(int i, int j) const { return values[std::size_t(i) * std::size_t(n_beta) + std::size_t(j)]; }

    /// (1/(2pi)^2) * double integral of |Psi|^2 (midpoint rule)
    double norm_squared() const {
        double s = 0.0;
        for (const auto& v : values) s += std::norm(v);
        return s / double(values.size());
    }
};

inline TorusField zak_forward(const LineState& s, Convention c, int n_alpha, int n_beta) {
    if (n_alpha < 2 || n_beta < 2) throw std::invalid_argument("zak_forward: grid must be at least 2x2");
    TorusField f;
    f.convention = c;
    f.units = s.units();
    f.n_alpha = n_alpha;
    f.n_beta = n_beta;
    f.values.resize(std::size_t(n_alpha) * std::size_t(n_beta));
    for (int i = 0; i < n_alpha; ++i)
        for (int j = 0; j < n_beta; ++j) f.at(i, j) = zak_value(s, c, f.alpha(i), f.beta(j));
    const Support sup = s.x_support();
    const double x0 = s.units().x0();
    f.truncation_k = sup.heavy_tail ? -1 : long(std::ceil(std::max(std::abs(sup.lo), std::abs(sup.hi)) / x0)) + 1;
    return f;
}

struct InverseResult {
    LineState state;
    double error_estimate; ///< change against the half-resolution beta rule
};

/// Recovers psi on x = x0 (alpha_i/2pi + k), k_min <= k <= k_max, with one
/// beta quadrature per point.  The result is a (non-renormalized) sampled
/// state with spacing x0/n_alpha.
inline InverseResult zak_inverse(const TorusField& f, long k_min, long k_max) {
    if (k_max < k_min) throw std::invalid_argument("zak_inverse: empty k range");
    const double x0 = f.units.x0();
    const long nk = k_max - k_min + 1;
    std::vector<cplx> samples(std::size_t(nk) * std::size_t(f.n_alpha));
    double err = 0.0;
    const bool halvable = f.n_beta % 2 == 0 && f.n_beta >= 4;
    for (int i = 0; i < f.n_alpha; ++i) {
        const double a = f.alpha(i);
        std::vector<cplx> g(std::size_t(f.n_beta));
        for (int j = 0; j < f.n_beta; ++j) {
            const double b = f.beta(j);
            g[std::size_t(j)] = chi(f.convention, a, b) * std::polar(1.0, a * b / (4.0 * pi)) * f.at(i, j) / std::sqrt(x0);
        }
        for (long k = k_min; k <= k_max; ++k) {
            cplx full{}, half{};
            for (int j = 0; j < f.n_beta; ++j) {
                const cplx t = g[std::size_t(j)] * std::polar(1.0, f.beta(j) * double(k));
                full += t;
                if (halvable && j % 2 == 0) half += g[std::size_t(j)] * std::polar(1.0, f.beta(j) * double(k));
            }
            full /= double(f.n_beta);
            if (halvable) {
                // the even-index subgrid is shifted by half a coarse cell
                half = half / double(f.n_beta / 2) * std::polar(1.0, (pi / double(f.n_beta)) * double(k));
                err = std::max(err, std::abs(full - half));
            }
            samples[std::size_t((k - k_min) * f.n_alpha + i)] = full;
        }
    }
    const double dx = x0 / double(f.n_alpha);
    const double x_min = x0 * (f.alpha(0) / two_pi + double(k_min));
    return {LineState::sampled(x_min, dx, std::move(samples), f.units, false), err};
}

/// Truncated coefficient matrix c_{l,m} = <l,m|psi> over l_lo..l_hi, m_lo..m_hi.
struct DiscreteZakCoeffs {
    Convention convention = Convention::A;
    long l_lo = 0, l_hi = -1, m_lo = 0, m_hi = -1;
    std::vector<cplx> c; ///< row-major in l, m fastest
    double max_quadrature_error = 0.0;

    long n_l() const { return l_hi - l_lo + 1; }
    long n_m() const { return m_hi - m_lo + 1; }
    bool contains(long l, long m) const { return l >= l_lo && l <= l_hi && m >= m_lo && m <= m_hi; }
    cplx& at(long l, long m) { return c[std::size_t((l - l_lo) * n_m() + (m - m_lo))]; }
    cplx at(long l, long m) const { return contains(l, m) ? c[std::size_t((l - l_lo) * n_m() + (m - m_lo))] : cplx{}; }
    double weight() const {
        double s = 0.0;
        for (const auto& v : c) s += std::norm(v);
        return s;
    }

    static DiscreteZakCoeffs zeros(Convention conv, long l_lo, long l_hi, long m_lo, long m_hi) {
        if (l_hi < l_lo || m_hi < m_lo) throw std::invalid_argument("coefficient window is empty");
        DiscreteZakCoeffs d;
        d.convention = conv;
        d.l_lo = l_lo;
        d.l_hi = l_hi;
        d.m_lo = m_lo;
        d.m_hi = m_hi;
        d.c.assign(std::size_t(d.n_l() * d.n_m()), cplx{});
        return d;
    }
};

/// One coefficient by quadrature.  The inner product is taken in the
/// representation where the basis function has compact support when there is
/// one: position for (b), momentum for (a); (c) integrates over the whole
/// line cell by cell.
inline QuadResult<cplx> coefficient(const LineState& s, Convention c, long l, long m) {
    const UnitsConfig& u = s.units();
    const QuadOptions opt{1e-13, 1e-12, 2000};
    if (c == Convention::B) {
        auto f = [&](double x) { return std::conj(discrete_wf_x(c, l, m, x, u)) * s.psi_x(x); };
        const double lo = u.x0() * (double(m) - 0.5), hi = u.x0() * (double(m) + 0.5);
        return integrate_pieces(f, {lo, u.x0() * double(m), hi}, opt);
    }
    if (c == Convention::A) {
        auto f = [&](double p) { return std::conj(discrete_wf_p(c, l, m, p, u)) * s.psi_p(p); };
        const double lo = u.p0() * (double(l) - 0.5), hi = u.p0() * (double(l) + 0.5);
        return integrate_pieces(f, {lo, u.p0() * double(l), hi}, opt);
    }
    auto f = [&](double x) { return std::conj(discrete_wf_x(c, l, m, x, u)) * s.psi_x(x); };
    const Support sup = s.x_support();
    const double x0 = u.x0();
    if (!sup.heavy_tail) {
        // state confined to [lo, hi]; split at the kernel jumps (half-integers)
        auto pts = lattice_breaks(sup.lo, sup.hi, x0 * (double(m) + 0.5), x0);
        return integrate_pieces(f, pts, opt);
    }
    const double origin = x0 * (std::floor(0.5 * (sup.lo + sup.hi) / x0) + 0.5);
    const auto r = integrate_line(f, origin, x0, {}, opt, 48);
    QuadResult<cplx> q;
    q.value = r.value;
    q.error = r.error;
    return q;
}

inline DiscreteZakCoeffs coeffs_extract(const LineState& s, Convention c, long l_lo, long l_hi, long m_lo, long m_hi) {
    auto d = DiscreteZakCoeffs::zeros(c, l_lo, l_hi, m_lo, m_hi);
    for (long l = l_lo; l <= l_hi; ++l)
        for (long m = m_lo; m <= m_hi; ++m) {
            const auto q = coefficient(s, c, l, m);
            if (!q.converged) throw ConvergenceError("coefficient quadrature", q.error);
            d.at(l, m) = q.value;
            d.max_quadrature_error = std::max(d.max_quadrature_error, q.error);
        }
    return d;
}

enum class Summation { Plain, Fejer };

/// Truncated double Fourier series sum c_{l,m} exp(i(l alpha - m beta)),
/// optionally with triangular (Fejer) weights over each index.
inline cplx synthesize_torus(const DiscreteZakCoeffs& d, TorusPoint p, Summation mode = Summation::Fejer) {
    const long nl = std::max(std::labs(d.l_lo), std::labs(d.l_hi));
    const long nm = std::max(std::labs(d.m_lo), std::labs(d.m_hi));
    cplx s{};
    for (long l = d.l_lo; l <= d.l_hi; ++l) {
        const double wl = mode == Summation::Fejer ? fejer_weight(l, nl) : 1.0;
        for (long m = d.m_lo; m <= d.m_hi; ++m) {
            const double wm = mode == Summation::Fejer ? fejer_weight(m, nm) : 1.0;
            s += wl * wm * d.at(l, m) * std::polar(1.0, double(l) * p.alpha - double(m) * p.beta);
        }
    }
    return s;
}

/// U^j V^k psi, i.e. psi(x) -> exp(-i j p0 x/hbar) psi(x + k x0).  Sampled
/// states are resampled on their own grid; losing weight off the grid is an
/// error.
inline LineState apply_displacement(const LineState& s, long j, long k) {
    if (const auto* smp = std::get_if<LineState::Sampled>(&s.form())) {
        std::vector<cplx> out(smp->values.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double x = smp->x_min + double(i) * smp->dx;
            const double shifted = (x + double(k) * s.units().x0() - smp->x_min) / smp->dx;
            out[i] = std::polar(1.0, -two_pi * double(j) * x / s.units().x0()) * detail::cubic_sample(smp->values, shifted);
        }
        const double before = LineState::trapezoid_norm2(smp->values, smp->dx);
        const double after = LineState::trapezoid_norm2(out, smp->dx);
        if (std::abs(before - after) > 1e-6 * before)
            throw std::out_of_range("apply_displacement: translation moves weight off the sample grid");
        return LineState::sampled(smp->x_min, smp->dx, std::move(out), s.units(), false);
    }
    return LineState::displaced(s, j, k);
}

// ---------------------------------------------------------------------------
// marginal index distributions

enum class Axis { L, M };

/// P(L = l) = sum_m |c_{l,m}|^2 (or P(M = m) = sum_l |c_{l,m}|^2), summed over
/// the complementary index exactly by Parseval on the periodized kernel
/// product; for P(L = l):
///   p0 * int_0^1 |sum_n mu(2pi(eta + n - l)) psi~(p0 (eta + n))|^2 d eta.
inline double index_probability(const LineState& s, Convention c, Axis axis, long index) {
    const UnitsConfig& u = s.units();
    const bool lax = axis == Axis::L;
    const double unit = lax ? u.p0() : u.x0();
    const Support sup = lax ? s.p_support() : s.x_support();
    auto wf = [&](double v) { return lax ? s.psi_p(v) : s.psi_x(v); };
    auto kern = [&](double g) { return lax ? mu_of(c, g) : lambda_of(c, g); };
    const long n_lo = long(std::floor(sup.lo / unit)) - 1;
    const long n_hi = long(std::ceil(sup.hi / unit)) + 1;
    auto periodized = [&](double t) {
        auto term = [&](long n) {
            const double v = t + double(n);
            return cplx(kern(two_pi * (v - double(index)))) * wf(unit * v);
        };
        return lattice_sum(term, n_lo, n_hi, sup.heavy_tail).value;
    };
    auto integrand = [&](double t) { return std::norm(periodized(t)); };
    const auto r = integrate_pieces(integrand, {0.0, 0.5, 1.0}, QuadOptions{1e-14, 1e-13, 400});
    return unit * r.value;
}

struct IndexMean {
    double value = 0.0;
    double error = 0.0;
};

/// <L> = sum_l l P(L = l) (or <M>).  Exact finite sums where the kernel is a
/// box; otherwise symmetric partial sums about the bulk centre, Richardson
/// extrapolated over doubling half-widths.
inline IndexMean index_mean(const LineState& s, Convention c, Axis axis, long half_width0 = 16, int levels = 6) {
    const UnitsConfig& u = s.units();
    const bool lax = axis == Axis::L;
    const double unit = lax ? u.p0() : u.x0();
    const Support sup = lax ? s.p_support() : s.x_support();
    const bool box = lax ? (c == Convention::A) : (c == Convention::B);
    const long centre = std::lround(0.5 * (sup.lo + sup.hi) / unit);
    if (box && !sup.heavy_tail) {
        const long lo = long(std::floor(sup.lo / unit)) - 1, hi = long(std::ceil(sup.hi / unit)) + 1;
        double acc = 0.0;
        for (long i = lo; i <= hi; ++i) acc += double(i) * index_probability(s, c, axis, i);
        return {acc, 1e-14};
    }
    std::vector<cplx> seq;
    double acc = centre * index_probability(s, c, axis, centre);
    long done = 0;
    for (int lev = 0; lev < levels; ++lev) {
        const long w = half_width0 << lev;
        for (long d = done + 1; d <= w; ++d)
            acc += double(centre + d) * index_probability(s, c, axis, centre + d) +
                   double(centre - d) * index_probability(s, c, axis, centre - d);
        done = w;
        seq.emplace_back(acc);
    }
    const auto r = richardson_halving(seq);
    return {r.value.real(), r.error};
}

} // namespace zak
