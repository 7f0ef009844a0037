#pragma once

// Wigner functions of the discrete Zak basis states: closed forms, the
// defining integral as an independent oracle, marginals and sampled maps.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "zak/conventions.hpp"
#include "zak/quadrature.hpp"
#include "zak/series.hpp"

namespace zak {

/// 2x/x0 = a + s, 2p/p0 = b + t with |s|, |t| <= 1/2: the tile (a, b) of
/// size x0/2 by p0/2 and the position inside it.
struct TileCoords {
    long a = 0, b = 0;
    double s = 0.0, t = 0.0;
};

/// All tile coordinates of (xi, eta) = (x/x0, p/p0): one entry inside a
/// tile, two or four on tile edges and corners.
inline std::vector<TileCoords> tile_coords(double xi, double eta) {
    std::vector<TileCoords> out;
    for (long a : branch_labels(2.0 * xi))
        for (long b : branch_labels(2.0 * eta)) out.push_back({a, b, 2.0 * xi - double(a), 2.0 * eta - double(b)});
    return out;
}

namespace detail {

inline double sgn(double v) { return v > 0.0 ? 1.0 : v < 0.0 ? -1.0 : 0.0; }

inline double wigner_b00(double xi, double eta) {
    const double ax = std::abs(xi);
    if (ax >= 0.5) return 0.0; // the limit from inside is snc(0, .) = 0 as well
    return 2.0 * snc(1.0 - 2.0 * ax, two_pi * eta);
}

inline double wigner_c00_tile(const TileCoords& c) {
    double acc = 0.0;
    for (int j = 0; j <= 1; ++j)
        for (int k = 0; k <= 1; ++k) {
            const long e = (c.a + j) * (c.b + k);
            const double sign = (e % 2 == 0) ? 1.0 : -1.0;
            const double f1 = snc(std::abs(1.0 - std::abs(c.t) - k), (2.0 * c.a + c.s + j * sgn(c.s)) * pi / 2.0);
            const double f2 = snc(std::abs(1.0 - std::abs(c.s) - j), (2.0 * c.b + c.t + k * sgn(c.t)) * pi / 2.0);
            acc += sign * f1 * f2;
        }
    return 2.0 * acc;
}

inline double wigner_c00(double xi, double eta) {
    if (!is_half_integer(2.0 * xi) && !is_half_integer(2.0 * eta)) {
        const long a = nearest_label(2.0 * xi), b = nearest_label(2.0 * eta);
        return wigner_c00_tile({a, b, 2.0 * xi - double(a), 2.0 * eta - double(b)});
    }
    // tile edge: half-sum over the adjacent tiles
    const auto tiles = tile_coords(xi, eta);
    double acc = 0.0;
    for (const auto& t : tiles) acc += wigner_c00_tile(t);
    return acc / double(tiles.size());
}

} // namespace detail

/// W_00 in the dimensionless variables xi = x/x0, eta = p/p0.
inline double wigner00(Convention c, double xi, double eta) {
    switch (c) {
    case Convention::A: return detail::wigner_b00(eta, xi);
    case Convention::B: return detail::wigner_b00(xi, eta);
    default: return detail::wigner_c00(xi, eta);
    }
}

/// W_{lm}(x, p) = W_00(x - m x0, p - l p0).
inline double wigner_closed(Convention c, long l, long m, double x, double p, const UnitsConfig& u = {}) {
    return wigner00(c, u.xi(x) - double(m), u.eta(p) - double(l));
}

/// W_00 from its defining integral
///   2 int d alpha/2pi lambda(2pi xi + alpha) exp(2i alpha eta) lambda(2pi xi - alpha)
/// (or the mirror mu form when that one has compact support).
inline QuadResult<double> wigner_integral_oracle(Convention c, double xi, double eta) {
    const QuadOptions opt{1e-13, 1e-12, 4000};
    // the compactly supported form: lambda for (b), mu for (a)
    if (c != Convention::C) {
        const double u = c == Convention::B ? xi : eta;
        const double v = c == Convention::B ? eta : xi;
        const double half = pi - two_pi * std::abs(u);
        QuadResult<double> r;
        if (half <= 0.0) return r;
        auto f = [&](double a) { return std::cos(2.0 * a * v); };
        r = integrate(f, -half, half, opt);
        r.value /= pi;
        r.error /= pi;
        return r;
    }
    const double g = two_pi * xi;
    auto f = [&](double a) { return lambda_of(c, g + a) * lambda_of(c, g - a) * std::polar(1.0, 2.0 * a * eta); };
    // cells of 2 pi in alpha, split where g +- alpha crosses an odd multiple of pi
    std::vector<double> breaks;
    for (double off : {pi - g, pi + g}) {
        const double r = off - two_pi * std::floor(off / two_pi);
        if (r > 0.0 && r < two_pi) breaks.push_back(r);
    }
    auto cell = [&](long n) {
        const double lo = two_pi * double(n);
        std::vector<double> pts{lo, lo + two_pi};
        for (double b : breaks) pts.push_back(lo + b);
        return integrate_pieces(f, pts, opt);
    };
    // On each half line the cells form a series with ratio exp(+-4 pi i eta)
    // and 1/n^2 amplitudes.  Levin handles it once the phase has turned far
    // enough, so a direct head comes first when the ratio is close to 1.
    const double theta = std::abs(std::remainder(4.0 * pi * eta, two_pi));
    long head = 16;
    if (theta > 1e-8) head = std::clamp(long(std::ceil(20.0 / theta)), 16L, 20000L);
    QuadResult<cplx> acc;
    for (long n = 0; n < head; ++n) {
        acc += cell(n);
        acc += cell(-1 - n);
    }
    const auto up = levin_sum([&](int n) { return cell(head + n).value; }, 40);
    const auto down = levin_sum([&](int n) { return cell(-1 - head - n).value; }, 40);
    QuadResult<double> r;
    r.value = (acc.value + up.value + down.value).real() / pi;
    r.error = (acc.error + up.error + down.error) / pi;
    r.evaluations = acc.evaluations;
    return r;
}

/// p0 |lambda(2 pi xi)|^2 in units of p0 (the p marginal) and x0 |mu(2 pi eta)|^2
/// in units of x0 (the x marginal).
inline double marginal_p_expected(Convention c, double xi) { return std::pow(lambda_of(c, two_pi * xi), 2); }
inline double marginal_x_expected(Convention c, double eta) { return std::pow(mu_of(c, two_pi * eta), 2); }

namespace detail {

// 8-point Gauss-Legendre rule on [a, b]
template <class F>
double gauss_legendre8(const F& f, double a, double b) {
    static constexpr double x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
    static constexpr double w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += w[i] * (f(c - h * x[i]) + f(c + h * x[i]));
    return s * h;
}

// int over the line of g, which is smooth on quarter-unit cells and decays
// like an oscillating 1/v.  Symmetric partial integrals over n cells are
// averaged over n in [N/2, N) (Cesaro), which cancels the oscillating tail.
template <class G>
SeriesResult cesaro_line_integral(const G& g, int cells) {
    const QuadOptions opt{1e-13, 1e-11, 100};
    std::vector<double> partial;
    partial.reserve(std::size_t(cells));
    double acc = 0.0;
    for (int n = 0; n < cells; ++n) {
        const double lo = 0.25 * n;
        acc += integrate(g, lo, lo + 0.25, opt).value + integrate(g, -lo - 0.25, -lo, opt).value;
        partial.push_back(acc);
    }
    auto mean = [&](int from, int to) {
        double m = 0.0;
        for (int n = from; n < to; ++n) m += partial[std::size_t(n)];
        return m / double(to - from);
    };
    SeriesResult r;
    r.value = mean(cells / 2, cells);
    r.error = std::abs(r.value.real() - mean(cells / 4, cells / 2));
    r.terms = cells;
    return r;
}

} // namespace detail

/// int d eta W_00(xi, eta), expected p0 |lambda|^2 / p0.
inline SeriesResult wigner_marginal_p(Convention c, double xi, int cells = 4000) {
    return detail::cesaro_line_integral([&](double eta) { return wigner00(c, xi, eta); }, cells);
}

/// int d xi W_00(xi, eta), expected x0 |mu|^2 / x0.
inline SeriesResult wigner_marginal_x(Convention c, double eta, int cells = 4000) {
    return detail::cesaro_line_integral([&](double xi) { return wigner00(c, xi, eta); }, cells);
}

/// int d xi d eta W_00 = int dx dp W/(2 pi hbar), expected to be 1.  One
/// marginal is integrated over unit cells of the other variable (the kernel
/// jumps sit on the cell edges) with Levin acceleration; the inner integral
/// runs over the compact direction when there is one.
inline SeriesResult wigner_normalization(Convention c, int inner_cells = 1000) {
    auto f = [&](double v) {
        return c == Convention::B ? wigner_marginal_x(c, v, inner_cells).value.real()
                                  : wigner_marginal_p(c, v, inner_cells).value.real();
    };
    // the marginal is smooth inside each cell, so a fixed 8-point rule suffices
    auto cell = [&](long n) { return cplx(detail::gauss_legendre8(f, double(n) - 0.5, double(n) + 0.5)); };
    const auto up = levin_sum([&](int n) { return cell(n); }, 24);
    const auto down = levin_sum([&](int n) { return cell(-1 - n); }, 24);
    SeriesResult r;
    r.value = up.value + down.value;
    r.error = up.error + down.error;
    r.terms = up.terms + down.terms;
    return r;
}

/// Sampled closed-form W_{lm}; axes in units of x0 and p0, values row-major
/// with p running fastest.
struct WignerMap {
    Convention convention = Convention::B;
    long l = 0, m = 0;
    std::vector<double> x_grid; ///< x/x0
    std::vector<double> p_grid; ///< p/p0
    std::vector<double> values;
    std::array<double, 2> contour_levels{0.0, 1.0};

    double at(std::size_t i, std::size_t j) const { return values[i * p_grid.size() + j]; }
    double min() const { return *std::min_element(values.begin(), values.end()); }
    double max() const { return *std::max_element(values.begin(), values.end()); }
};

struct Window2D {
    double x_lo, x_hi, p_lo, p_hi; ///< in units of x0, p0
};

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[std::size_t(i)] = n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
    return v;
}

inline WignerMap wigner_map(Convention c, long l, long m, Window2D w, int n_x, int n_p) {
    if (n_x < 2 || n_p < 2) throw std::invalid_argument("wigner_map: resolution must be at least 2x2");
    WignerMap out;
    out.convention = c;
    out.l = l;
    out.m = m;
    out.x_grid = linspace(w.x_lo, w.x_hi, n_x);
    out.p_grid = linspace(w.p_lo, w.p_hi, n_p);
    out.values.reserve(std::size_t(n_x) * std::size_t(n_p));
    for (double xi : out.x_grid)
        for (double eta : out.p_grid) out.values.push_back(wigner00(c, xi - double(m), eta - double(l)));
    return out;
}

struct ContourSegment {
    std::array<double, 2> from, to; ///< (x/x0, p/p0)
};

/// Marching-squares segments of the level set W = level on the sampled map.
inline std::vector<ContourSegment> contour_segments(const WignerMap& map, double level) {
    std::vector<ContourSegment> out;
    const std::size_t nx = map.x_grid.size(), np = map.p_grid.size();
    auto interp = [&](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
        const double v0 = map.at(i0, j0) - level, v1 = map.at(i1, j1) - level;
        const double f = v0 == v1 ? 0.5 : v0 / (v0 - v1);
        return std::array<double, 2>{map.x_grid[i0] + f * (map.x_grid[i1] - map.x_grid[i0]),
                                     map.p_grid[j0] + f * (map.p_grid[j1] - map.p_grid[j0])};
    };
    for (std::size_t i = 0; i + 1 < nx; ++i)
        for (std::size_t j = 0; j + 1 < np; ++j) {
            // corners counter-clockwise: (i,j), (i+1,j), (i+1,j+1), (i,j+1)
            const std::array<std::pair<std::size_t, std::size_t>, 4> cn{{{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
            std::vector<std::array<double, 2>> hits;
            for (int e = 0; e < 4; ++e) {
                const auto [a0, b0] = cn[std::size_t(e)];
                const auto [a1, b1] = cn[std::size_t((e + 1) % 4)];
                const bool in0 = map.at(a0, b0) >= level, in1 = map.at(a1, b1) >= level;
                if (in0 != in1) hits.push_back(interp(a0, b0, a1, b1));
            }
            if (hits.size() == 2) out.push_back({hits[0], hits[1]});
            else if (hits.size() == 4) {
                // saddle: pair edges according to the cell mean
                double mean = 0.0;
                for (const auto& [a, b] : cn) mean += map.at(a, b);
                const bool centre_in = mean / 4.0 >= level;
                const bool first_in = map.at(i, j) >= level;
                if (centre_in == first_in) {
                    out.push_back({hits[0], hits[1]});
                    out.push_back({hits[2], hits[3]});
                } else {
                    out.push_back({hits[0], hits[3]});
                    out.push_back({hits[1], hits[2]});
                }
            }
        }
    return out;
}

} // namespace zak
