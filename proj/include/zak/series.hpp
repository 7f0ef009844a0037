#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "zak/quadrature.hpp"
#include "zak/units.hpp"

namespace zak {

struct SeriesResult {
    cplx value{};
    double error = 0.0;
    int terms = 0;
};

/// Levin u-transform of the one-sided series sum_{n>=0} a(n).
///
/// Handles the slowly decaying tails met throughout this library: terms of the
/// form z^n * r(n) with |z| = 1, z != 1 and r rational (sinc lattice sums),
/// as well as plain algebraic decay.  Series whose terms vanish identically
/// or underflow are summed directly.
template <class Term>
SeriesResult levin_sum(const Term& a, int max_terms = 40) {
    std::vector<cplx> terms(max_terms), partial(max_terms);
    cplx s{};
    double biggest = 0.0;
    int last_nonzero = -1;
    for (int n = 0; n < max_terms; ++n) {
        terms[n] = cplx(a(n));
        s += terms[n];
        partial[n] = s;
        biggest = std::max(biggest, std::abs(terms[n]));
        if (terms[n] != cplx{}) last_nonzero = n;
    }
    SeriesResult out;
    out.terms = max_terms;
    if (last_nonzero < 0) return out;
    // direct summation is exact when the tail is negligible
    bool tiny_tail = true;
    for (int n = max_terms - 6; n < max_terms; ++n)
        if (std::abs(terms[n]) > 1e-17 * std::max(biggest, std::abs(s))) tiny_tail = false;
    if (tiny_tail) {
        out.value = s;
        out.error = 1e-16 * std::abs(s);
        return out;
    }
    for (const auto& t : terms)
        if (t == cplx{}) {
            // isolated exact zeros break the remainder estimates; fall back
            out.value = s;
            out.error = std::abs(terms[max_terms - 1]) * max_terms;
            return out;
        }

    constexpr double beta = 1.0;
    auto levin = [&](int n, int k) {
        cplx num{}, den{};
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            if (j > 0) binom *= double(k - j + 1) / j;
            const double ratio = std::pow((beta + n + j) / (beta + n + k), k - 1);
            const cplx omega = (beta + n + j) * terms[n + j];
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            const cplx w = sign * binom * ratio / omega;
            num += w * partial[n + j];
            den += w;
        }
        return num / den;
    };

    const int n0 = 1;
    cplx best = partial[max_terms - 1];
    double best_err = std::abs(terms[max_terms - 1]) * max_terms;
    cplx prev = levin(n0, 2);
    for (int k = 3; n0 + k < max_terms; ++k) {
        const cplx cur = levin(n0, k);
        const double diff = std::abs(cur - prev);
        if (diff < best_err) {
            best_err = diff;
            best = cur;
        }
        prev = cur;
    }
    out.value = best;
    out.error = best_err;
    return out;
}

/// Two-sided lattice sum sum_{k in Z} a(k): the terms with lo <= k <= hi are
/// added directly, both tails are Levin-accelerated.
template <class Term>
SeriesResult lattice_sum(const Term& a, long lo, long hi, bool accelerate_tails) {
    SeriesResult out;
    for (long k = lo; k <= hi; ++k) out.value += cplx(a(k));
    out.terms = int(hi - lo + 1);
    if (accelerate_tails) {
        auto up = levin_sum([&](int n) { return cplx(a(hi + 1 + n)); });
        auto down = levin_sum([&](int n) { return cplx(a(lo - 1 - n)); });
        out.value += up.value + down.value;
        out.error += up.error + down.error;
        out.terms += up.terms + down.terms;
    }
    return out;
}

/// Richardson extrapolation of a sequence S(L_0 * 2^i) that converges like a
/// power series in 1/L.  Returns the extrapolated value and the change of the
/// last extrapolation step as an error estimate.
inline SeriesResult richardson_halving(const std::vector<cplx>& seq) {
    SeriesResult out;
    if (seq.empty()) return out;
    std::vector<cplx> row(seq);
    cplx prev_best = row.back();
    cplx best = row.back();
    double err = 0.0;
    for (std::size_t level = 1; level < seq.size(); ++level) {
        const double f = std::pow(2.0, double(level));
        std::vector<cplx> next;
        for (std::size_t i = 1; i < row.size(); ++i) next.push_back(row[i] + (row[i] - row[i - 1]) / (f - 1.0));
        prev_best = best;
        best = next.back();
        err = std::abs(best - prev_best);
        row = std::move(next);
    }
    out.value = best;
    out.error = err;
    out.terms = int(seq.size());
    return out;
}

/// Triangular (Fejer / Cesaro-1) weight for index k of a symmetric partial sum
/// of half-width n.
inline double fejer_weight(long k, long n) {
    const double w = 1.0 - double(std::labs(k)) / double(n + 1);
    return w > 0.0 ? w : 0.0;
}

/// Integral of f over the whole real line.  The line is cut into cells
/// [origin + n*cell, origin + (n+1)*cell]; `breaks` lists extra split points
/// as offsets in [0, cell) inside every cell.  Cells are integrated
/// adaptively and the two one-sided cell series are Levin-accelerated.
template <class F>
SeriesResult integrate_line(const F& f, double origin, double cell, std::vector<double> breaks = {},
                            const QuadOptions& opt = {}, int max_cells = 40) {
    auto cell_integral = [&](long n) {
        const double a = origin + n * cell;
        std::vector<double> pts{a, a + cell};
        for (double b : breaks)
            if (b > 0.0 && b < cell) pts.push_back(a + b);
        return cplx(integrate_pieces(f, pts, opt).value);
    };
    auto up = levin_sum([&](int n) { return cell_integral(n); }, max_cells);
    auto down = levin_sum([&](int n) { return cell_integral(-1 - n); }, max_cells);
    SeriesResult out;
    out.value = up.value + down.value;
    out.error = up.error + down.error;
    out.terms = up.terms + down.terms;
    return out;
}

} // namespace zak
