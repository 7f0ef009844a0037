#pragma once

// Phase conventions of the periodic Zak basis: the unit-modulus function
// chi(alpha, beta), its single-argument kernels lambda and mu, and the small
// special functions they are built from.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "zak/quadrature.hpp"
#include "zak/units.hpp"

namespace zak {

/// (a): continuous in alpha; (b): continuous in beta; (c): symmetric,
/// discontinuous in both.
enum class Convention { A, B, C };

inline char to_char(Convention c) {
    switch (c) {
    case Convention::A: return 'a';
    case Convention::B: return 'b';
    default: return 'c';
    }
}

inline Convention parse_convention(const std::string& s) {
    if (s == "a" || s == "A") return Convention::A;
    if (s == "b" || s == "B") return Convention::B;
    if (s == "c" || s == "C") return Convention::C;
    throw std::invalid_argument("unknown convention '" + s + "' (expected a, b or c)");
}

inline constexpr std::array<Convention, 3> all_conventions{Convention::A, Convention::B, Convention::C};

struct TorusPoint {
    double alpha = 0.0;
    double beta = 0.0;
};

// ---------------------------------------------------------------------------
// closest integer

inline bool is_half_integer(double z) { return z - std::floor(z) == 0.5; }

/// Integer closest to z.  At z = k + 1/2 the value is k + 1/2, the mean of
/// the one-sided limits k and k + 1.
inline double closest_integer(double z) {
    if (!std::isfinite(z)) throw std::invalid_argument("closest_integer: non-finite argument");
    const double f = std::floor(z);
    const double d = z - f;
    if (d == 0.5) return z;
    return d < 0.5 ? f : f + 1.0;
}

/// Integer label of the cell containing z; ties go to the lower cell.
inline long nearest_label(double z) { return static_cast<long>(std::ceil(z - 0.5)); }

/// Both candidate labels of z: one entry off ties, the two adjacent cells on
/// a tie.  Half-sum values are averages over these branches.
inline std::vector<long> branch_labels(double z) {
    const long a = nearest_label(z);
    if (is_half_integer(z)) return {a, a + 1};
    return {a};
}

struct Reduced {
    long a = 0;
    long b = 0;
    TorusPoint point;
};

/// p = point + 2*pi*(a, b) with point in (-pi, pi] x (-pi, pi].  On the cell
/// boundary the labels use the lower cell.
inline Reduced reduce_to_standard_square(TorusPoint p) {
    Reduced r;
    r.a = nearest_label(p.alpha / two_pi);
    r.b = nearest_label(p.beta / two_pi);
    r.point = {p.alpha - two_pi * double(r.a), p.beta - two_pi * double(r.b)};
    return r;
}

/// Distance of a phase from the lattice pi + 2*pi*Z.
inline double distance_to_odd_pi(double phase) {
    const double r = std::remainder(phase - pi, two_pi);
    return std::abs(r);
}

/// Max-norm distance of p from the discontinuity lines of chi for the given
/// convention.
inline double line_distance(Convention c, TorusPoint p) {
    switch (c) {
    case Convention::A: return distance_to_odd_pi(p.beta);
    case Convention::B: return distance_to_odd_pi(p.alpha);
    default: return std::min(distance_to_odd_pi(p.alpha), distance_to_odd_pi(p.beta));
    }
}

// ---------------------------------------------------------------------------
// elementary functions

/// sin(y)/y with sinc(0) = 1.
inline double sinc(double y) { return y == 0.0 ? 1.0 : std::sin(y) / y; }

/// Incomplete sinc sin(z*alpha)/alpha for 0 <= z <= 1; the limit at alpha = 0 is z.
inline double snc(double z, double alpha) {
    if (!(z >= 0.0 && z <= 1.0)) throw std::invalid_argument("snc: z must lie in [0, 1]");
    return alpha == 0.0 ? z : std::sin(z * alpha) / alpha;
}

/// (-1)^round(alpha/2pi) * sin(alpha/2), the 2pi-periodic half sine; zero on
/// its jumps at alpha = pi mod 2pi.
inline double half_sine(double alpha) {
    double acc = 0.0;
    const auto labels = branch_labels(alpha / two_pi);
    for (long a : labels) acc += ((a % 2 == 0) ? 1.0 : -1.0) * std::sin(0.5 * alpha);
    return acc / double(labels.size());
}

/// Coefficient of sin(j*alpha) in the two-sided sine series of half_sine.
inline double half_sine_coefficient(long j) {
    const double sign = (j % 2 == 0) ? -1.0 : 1.0;
    return sign / ((double(j) + 0.5) * pi);
}

// ---------------------------------------------------------------------------
// chi

namespace detail {

inline cplx chi_branch(Convention c, double alpha, double beta, long a, long b) {
    switch (c) {
    case Convention::A: return std::polar(1.0, alpha * (beta / (4.0 * pi) - double(b)));
    case Convention::B: return std::polar(1.0, -beta * (alpha / (4.0 * pi) - double(a)));
    default: {
        const double sign = ((a * b) % 2 == 0) ? 1.0 : -1.0;
        return sign * std::polar(1.0, 0.5 * (double(a) * beta - alpha * double(b)));
    }
    }
}

} // namespace detail

/// chi(alpha, beta) for the selected convention.  On discontinuity lines the
/// result is the mean of the one-sided limits (all adjacent branches).
inline cplx chi(Convention c, TorusPoint p) {
    const auto as = branch_labels(p.alpha / two_pi);
    const auto bs = branch_labels(p.beta / two_pi);
    cplx acc{};
    for (long a : as)
        for (long b : bs) acc += detail::chi_branch(c, p.alpha, p.beta, a, b);
    return acc / double(as.size() * bs.size());
}

inline cplx chi(Convention c, double alpha, double beta) { return chi(c, TorusPoint{alpha, beta}); }

/// Smooth part of chi^* (1/i) d chi / d alpha (delta-line terms excluded).
inline double chi_dalpha_smooth(Convention c, double /*alpha*/, double beta) {
    switch (c) {
    case Convention::A: return beta / (4.0 * pi) - closest_integer(beta / two_pi);
    case Convention::B: return -beta / (4.0 * pi);
    default: return -0.5 * closest_integer(beta / two_pi);
    }
}

/// Smooth part of chi^* i d chi / d beta (delta-line terms excluded).
inline double chi_dbeta_smooth(Convention c, double alpha, double /*beta*/) {
    switch (c) {
    case Convention::A: return -alpha / (4.0 * pi);
    case Convention::B: return alpha / (4.0 * pi) - closest_integer(alpha / two_pi);
    default: return -0.5 * closest_integer(alpha / two_pi);
    }
}

// ---------------------------------------------------------------------------
// lambda and mu

namespace detail {

enum class KernelShape { Box, HalfSinc, BranchSinc };

inline KernelShape lambda_shape(Convention c) {
    return c == Convention::A ? KernelShape::HalfSinc : c == Convention::B ? KernelShape::Box : KernelShape::BranchSinc;
}

inline KernelShape mu_shape(Convention c) {
    return c == Convention::A ? KernelShape::Box : c == Convention::B ? KernelShape::HalfSinc : KernelShape::BranchSinc;
}

inline double kernel_value(KernelShape shape, double gamma) {
    if (shape == KernelShape::HalfSinc) return sinc(0.5 * gamma);
    const auto labels = branch_labels(gamma / two_pi);
    double acc = 0.0;
    for (long a : labels) {
        if (shape == KernelShape::Box) acc += (a == 0) ? 1.0 : 0.0;
        else acc += sinc(0.25 * (gamma + two_pi * double(a)));
    }
    return acc / double(labels.size());
}

} // namespace detail

/// Closed-form lambda(alpha): sinc(alpha/2) for (a), the indicator of
/// |alpha| < pi for (b), sinc((alpha + 2 pi a)/4) with a = round(alpha/2pi)
/// for (c).  Jumps carry the half-sum value.
inline double lambda_of(Convention c, double alpha) {
    return detail::kernel_value(detail::lambda_shape(c), alpha);
}

/// Closed-form mu(beta); mirror image of lambda_of with (a) and (b) swapped.
inline double mu_of(Convention c, double beta) {
    return detail::kernel_value(detail::mu_shape(c), beta);
}

/// lambda(alpha) = (1/2pi) * int over one period of exp(i alpha beta / 4pi) chi(alpha, beta) d beta,
/// split at the discontinuity lines of chi.
inline QuadResult<cplx> lambda_by_quadrature(Convention c, double alpha, const QuadOptions& opt = {}) {
    auto f = [&](double beta) { return std::polar(1.0, alpha * beta / (4.0 * pi)) * chi(c, alpha, beta); };
    auto r = integrate_pieces(f, lattice_breaks(-pi, pi, pi, two_pi), opt);
    r.value /= two_pi;
    r.error /= two_pi;
    if (!r.converged) throw ConvergenceError("lambda quadrature", r.error);
    return r;
}

/// mu(beta) = (1/2pi) * int over one period of exp(-i alpha beta / 4pi) chi(alpha, beta) d alpha.
inline QuadResult<cplx> mu_by_quadrature(Convention c, double beta, const QuadOptions& opt = {}) {
    auto f = [&](double alpha) { return std::polar(1.0, -alpha * beta / (4.0 * pi)) * chi(c, alpha, beta); };
    auto r = integrate_pieces(f, lattice_breaks(-pi, pi, pi, two_pi), opt);
    r.value /= two_pi;
    r.error /= two_pi;
    if (!r.converged) throw ConvergenceError("mu quadrature", r.error);
    return r;
}

struct KernelSample {
    double gamma, lambda, mu;
};

/// lambda and mu on n equally spaced points of [lo, hi] (both ends included).
inline std::vector<KernelSample> kernel_table(Convention c, double lo, double hi, int n) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("kernel_table: need hi > lo and at least 2 samples");
    std::vector<KernelSample> out;
    out.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        const double g = lo + (hi - lo) * double(i) / double(n - 1);
        out.push_back({g, lambda_of(c, g), mu_of(c, g)});
    }
    return out;
}

} // namespace zak
