#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "zak/conventions.hpp"
#include "zak/series.hpp"
#include "zak/units.hpp"

namespace zak {

/// Interval carrying the bulk of a wavefunction.  When `heavy_tail` is set the
/// function decays only algebraically outside [lo, hi].
struct Support {
    double lo = 0.0;
    double hi = 0.0;
    bool heavy_tail = false;
};

/// A state on the line, in analytic form or as uniform samples.
///
/// Analytic forms are evaluated exactly in both the position and the momentum
/// representation (<x|p> = exp(ixp/hbar)/sqrt(2 pi hbar)).  Values are
/// immutable after construction.
class LineState {
public:
    /// |psi|^2 is a normal density with mean `center` and standard deviation
    /// `width`; `boost` is the mean momentum.
    struct Gaussian {
        double center;
        double width;
        double boost;
    };
    /// Discrete Zak basis state |l, m> of a phase convention.
    struct Basis {
        Convention convention;
        long l;
        long m;
    };
    /// Samples psi(x_min + i*dx), cubic interpolation in between, zero outside.
    struct Sampled {
        double x_min;
        double dx;
        std::vector<cplx> values;
    };
    struct Term {
        cplx weight;
        std::shared_ptr<const LineState> state;
    };
    struct Superposition {
        std::vector<Term> terms;
    };
    /// U^j V^k applied to `inner`.
    struct Displaced {
        std::shared_ptr<const LineState> inner;
        long j;
        long k;
    };
    using Form = std::variant<Gaussian, Basis, Sampled, Superposition, Displaced>;

    static LineState gaussian(double center, double width, double boost, UnitsConfig u = {}) {
        if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(center) || !std::isfinite(boost))
            throw std::invalid_argument("gaussian state: width must be positive, all parameters finite");
        return LineState(Gaussian{center, width, boost}, u);
    }

    static LineState basis(Convention c, long l, long m, UnitsConfig u = {}) { return LineState(Basis{c, l, m}, u); }

    /// Samples are normalized to unit trapezoidal norm unless `normalize` is false.
    static LineState sampled(double x_min, double dx, std::vector<cplx> values, UnitsConfig u = {},
                             bool normalize = true) {
        if (!(dx > 0.0)) throw std::invalid_argument("sampled state: dx must be positive");
        if (values.size() < 4) throw std::invalid_argument("sampled state: need at least 4 samples");
        LineState s(Sampled{x_min, dx, std::move(values)}, u);
        if (normalize) {
            auto& v = std::get<Sampled>(s.form_).values;
            const double n2 = trapezoid_norm2(v, dx);
            if (!(n2 > 0.0) || !std::isfinite(n2)) throw std::invalid_argument("sampled state: not normalizable");
            const double f = 1.0 / std::sqrt(n2);
            for (auto& x : v) x *= f;
        }
        return s;
    }

    /// Weights are rescaled so that the superposition has unit norm.
    static LineState superposition(std::vector<std::pair<cplx, LineState>> parts);

    static LineState displaced(const LineState& inner, long j, long k) {
        return LineState(Displaced{std::make_shared<const LineState>(inner), j, k}, inner.units_);
    }

    const Form& form() const noexcept { return form_; }
    const UnitsConfig& units() const noexcept { return units_; }

    cplx psi_x(double x) const;
    cplx psi_p(double p) const;
    Support x_support() const;
    Support p_support() const;

    /// sum_k exp(-i beta (xi0 + k)) psi(x0 (xi0 + k)): the lattice sum behind
    /// the Zak transform.  Sinc-tailed basis states are summed in closed form
    /// through sum_k z^k/(k+u) = pi exp(i(pi - arg z) u)/sin(pi u).
    SeriesResult lattice_sum(double xi0, double beta) const;

    static double trapezoid_norm2(const std::vector<cplx>& v, double dx) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
            s += w * std::norm(v[i]);
        }
        return s * dx;
    }

private:
    LineState(Form f, UnitsConfig u) : form_(std::move(f)), units_(u) {}

    Form form_;
    UnitsConfig units_;
};

/// <a|b> with closed forms where available, otherwise cell-wise quadrature
/// over the line.
cplx inner_product(const LineState& a, const LineState& b);

// ---------------------------------------------------------------------------
// implementation

namespace detail {

inline cplx cubic_sample(const std::vector<cplx>& v, double t) {
    // t in units of the grid spacing
    const long n = long(v.size());
    if (t < 0.0 || t > double(n - 1)) return {};
    const double fl = std::floor(t);
    const double f = t - fl;
    const long i = long(fl);
    if (f < 1e-9) return v[std::size_t(i)];
    if (f > 1.0 - 1e-9) return v[std::size_t(std::min(i + 1, n - 1))];
    auto at = [&](long k) { return (k < 0 || k >= n) ? cplx{} : v[std::size_t(k)]; };
    const cplx p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    // 4-point Lagrange interpolation on nodes -1, 0, 1, 2
    const double w0 = -f * (f - 1.0) * (f - 2.0) / 6.0;
    const double w1 = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
    const double w2 = -(f + 1.0) * f * (f - 2.0) / 2.0;
    const double w3 = (f + 1.0) * f * (f - 1.0) / 6.0;
    return w0 * p0 + w1 * p1 + w2 * p2 + w3 * p3;
}

// sum_k z^k/(k+u) with z = -exp(-i beta), times sin(pi u)/pi, for every branch
// of the beta label (half-sum on z = 1).
inline cplx alternating_sinc_lattice(double u, double beta) {
    const auto labels = branch_labels(beta / two_pi);
    cplx acc{};
    for (long n : labels) acc += std::polar(1.0, (beta - two_pi * double(n)) * u);
    return acc / double(labels.size());
}

inline Support merge(Support a, Support b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi), a.heavy_tail || b.heavy_tail};
}

} // namespace detail

inline cplx LineState::psi_x(double x) const {
    const double x0 = units_.x0();
    const double hbar = units_.hbar();
    return std::visit(
        [&](const auto& f) -> cplx {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                const double d = x - f.center;
                const double amp = std::pow(two_pi * f.width * f.width, -0.25) * std::exp(-d * d / (4.0 * f.width * f.width));
                return amp * std::polar(1.0, f.boost * x / hbar);
            } else if constexpr (std::is_same_v<T, Basis>) {
                const double xi = x / x0;
                return std::polar(1.0, two_pi * double(f.l) * xi) * lambda_of(f.convention, two_pi * (xi - double(f.m))) /
                       std::sqrt(x0);
            } else if constexpr (std::is_same_v<T, Sampled>) {
                return detail::cubic_sample(f.values, (x - f.x_min) / f.dx);
            } else if constexpr (std::is_same_v<T, Superposition>) {
                cplx s{};
                for (const auto& t : f.terms) s += t.weight * t.state->psi_x(x);
                return s;
            } else {
                return std::polar(1.0, -two_pi * double(f.j) * x / x0) * f.inner->psi_x(x + double(f.k) * x0);
            }
        },
        form_);
}

inline cplx LineState::psi_p(double p) const {
    const double p0 = units_.p0();
    const double hbar = units_.hbar();
    return std::visit(
        [&](const auto& f) -> cplx {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                const double q = (p - f.boost) / hbar;
                const double amp = std::pow(2.0 * f.width * f.width / (pi * hbar * hbar), 0.25) *
                                   std::exp(-f.width * f.width * q * q);
                return amp * std::polar(1.0, -q * f.center);
            } else if constexpr (std::is_same_v<T, Basis>) {
                const double eta = p / p0;
                return std::polar(1.0, -two_pi * double(f.m) * eta) * mu_of(f.convention, two_pi * (eta - double(f.l))) /
                       std::sqrt(p0);
            } else if constexpr (std::is_same_v<T, Sampled>) {
                // trapezoidal Fourier integral of the samples
                cplx s{};
                const std::size_t n = f.values.size();
                for (std::size_t i = 0; i < n; ++i) {
                    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
                    const double x = f.x_min + double(i) * f.dx;
                    s += w * std::polar(1.0, -p * x / hbar) * f.values[i];
                }
                return s * f.dx / std::sqrt(two_pi * hbar);
            } else if constexpr (std::is_same_v<T, Superposition>) {
                cplx s{};
                for (const auto& t : f.terms) s += t.weight * t.state->psi_p(p);
                return s;
            } else {
                return std::polar(1.0, two_pi * double(f.k) * p / p0) * f.inner->psi_p(p + double(f.j) * p0);
            }
        },
        form_);
}

inline Support LineState::x_support() const {
    const double x0 = units_.x0();
    return std::visit(
        [&](const auto& f) -> Support {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                return {f.center - 12.0 * f.width, f.center + 12.0 * f.width, false};
            } else if constexpr (std::is_same_v<T, Basis>) {
                return {x0 * (double(f.m) - 0.5), x0 * (double(f.m) + 0.5), f.convention != Convention::B};
            } else if constexpr (std::is_same_v<T, Sampled>) {
                return {f.x_min, f.x_min + f.dx * double(f.values.size() - 1), false};
            } else if constexpr (std::is_same_v<T, Superposition>) {
                Support s = f.terms.front().state->x_support();
                for (const auto& t : f.terms) s = detail::merge(s, t.state->x_support());
                return s;
            } else {
                Support s = f.inner->x_support();
                return {s.lo - double(f.k) * x0, s.hi - double(f.k) * x0, s.heavy_tail};
            }
        },
        form_);
}

inline Support LineState::p_support() const {
    const double p0 = units_.p0();
    const double hbar = units_.hbar();
    return std::visit(
        [&](const auto& f) -> Support {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                const double sp = hbar / (2.0 * f.width);
                return {f.boost - 12.0 * sp, f.boost + 12.0 * sp, false};
            } else if constexpr (std::is_same_v<T, Basis>) {
                return {p0 * (double(f.l) - 0.5), p0 * (double(f.l) + 0.5), f.convention != Convention::A};
            } else if constexpr (std::is_same_v<T, Sampled>) {
                // band limit of the cubic samples
                const double pmax = pi * hbar / f.dx;
                return {-pmax, pmax, false};
            } else if constexpr (std::is_same_v<T, Superposition>) {
                Support s = f.terms.front().state->p_support();
                for (const auto& t : f.terms) s = detail::merge(s, t.state->p_support());
                return s;
            } else {
                Support s = f.inner->p_support();
                return {s.lo - double(f.j) * p0, s.hi - double(f.j) * p0, s.heavy_tail};
            }
        },
        form_);
}

inline SeriesResult LineState::lattice_sum(double xi0, double beta) const {
    const double x0 = units_.x0();
    auto direct = [&](double lo, double hi) {
        SeriesResult r;
        const long k0 = long(std::floor(lo / x0 - xi0)) - 1;
        const long k1 = long(std::ceil(hi / x0 - xi0)) + 1;
        for (long k = k0; k <= k1; ++k) {
            const double xi = xi0 + double(k);
            r.value += std::polar(1.0, -beta * xi) * psi_x(x0 * xi);
        }
        r.terms = int(k1 - k0 + 1);
        return r;
    };
    return std::visit(
        [&](const auto& f) -> SeriesResult {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian> || std::is_same_v<T, Sampled>) {
                const Support s = x_support();
                return direct(s.lo, s.hi);
            } else if constexpr (std::is_same_v<T, Basis>) {
                if (f.convention == Convention::B) return direct(x0 * (double(f.m) - 0.5), x0 * (double(f.m) + 0.5));
                const double u = xi0 - double(f.m);
                const cplx pre = std::polar(1.0, two_pi * double(f.l) * xi0 - beta * xi0) / std::sqrt(x0);
                SeriesResult r;
                r.terms = 0;
                if (f.convention == Convention::A) {
                    r.value = pre * detail::alternating_sinc_lattice(u, beta);
                } else {
                    // lambda_c(2 pi (u + k)) = (-1)^k sin(pi v)/(pi (v + k)), v = (u + a)/2
                    const auto labels = branch_labels(u);
                    cplx acc{};
                    for (long a : labels) acc += detail::alternating_sinc_lattice(0.5 * (u + double(a)), beta);
                    r.value = pre * acc / double(labels.size());
                }
                return r;
            } else if constexpr (std::is_same_v<T, Superposition>) {
                SeriesResult r;
                for (const auto& t : f.terms) {
                    const auto part = t.state->lattice_sum(xi0, beta);
                    r.value += t.weight * part.value;
                    r.error += std::abs(t.weight) * part.error;
                    r.terms += part.terms;
                }
                return r;
            } else {
                auto r = f.inner->lattice_sum(xi0, beta);
                r.value *= std::polar(1.0, -two_pi * double(f.j) * xi0 + beta * double(f.k));
                return r;
            }
        },
        form_);
}

inline cplx inner_product(const LineState& a, const LineState& b) {
    // superpositions expand bilinearly so the exact pairwise forms below apply
    if (const auto* sa = std::get_if<LineState::Superposition>(&a.form())) {
        cplx acc{};
        for (const auto& t : sa->terms) acc += std::conj(t.weight) * inner_product(*t.state, b);
        return acc;
    }
    if (const auto* sb = std::get_if<LineState::Superposition>(&b.form())) {
        cplx acc{};
        for (const auto& t : sb->terms) acc += t.weight * inner_product(a, *t.state);
        return acc;
    }
    const auto* ba = std::get_if<LineState::Basis>(&a.form());
    const auto* bb = std::get_if<LineState::Basis>(&b.form());
    if (ba && bb && ba->convention == bb->convention && a.units() == b.units())
        return (ba->l == bb->l && ba->m == bb->m) ? cplx{1.0} : cplx{};
    const auto* ga = std::get_if<LineState::Gaussian>(&a.form());
    const auto* gb = std::get_if<LineState::Gaussian>(&b.form());
    if (ga && gb && a.units() == b.units()) {
        const double hbar = a.units().hbar();
        const double s1 = ga->width * ga->width, s2 = gb->width * gb->width;
        const double A = 0.25 / s1 + 0.25 / s2;
        const cplx B = cplx(ga->center / (2.0 * s1) + gb->center / (2.0 * s2), (gb->boost - ga->boost) / hbar);
        const double C = -ga->center * ga->center / (4.0 * s1) - gb->center * gb->center / (4.0 * s2);
        const double norm = std::pow(two_pi * s1, -0.25) * std::pow(two_pi * s2, -0.25);
        return norm * std::sqrt(pi / A) * std::exp(B * B / (4.0 * A) + C);
    }
    const double x0 = a.units().x0();
    auto f = [&](double x) { return std::conj(a.psi_x(x)) * b.psi_x(x); };
    const Support s = detail::merge(a.x_support(), b.x_support());
    // cells of length x0 aligned with the half-integer jumps of the basis kernels
    const double origin = x0 * (std::floor(0.5 * (s.lo + s.hi) / x0) - 0.5);
    const int cells = int(std::ceil((s.hi - s.lo) / x0)) + 48;
    return integrate_line(f, origin, x0, {}, QuadOptions{1e-12, 1e-12, 400}, cells).value;
}

inline LineState LineState::superposition(std::vector<std::pair<cplx, LineState>> parts) {
    if (parts.empty()) throw std::invalid_argument("superposition: no terms");
    const UnitsConfig u = parts.front().second.units();
    Superposition sp;
    for (auto& [w, s] : parts) sp.terms.push_back({w, std::make_shared<const LineState>(std::move(s))});
    double n2 = 0.0;
    for (const auto& ti : sp.terms)
        for (const auto& tj : sp.terms) n2 += std::real(std::conj(ti.weight) * tj.weight * inner_product(*ti.state, *tj.state));
    if (!(n2 > 1e-300) || !std::isfinite(n2)) throw std::invalid_argument("superposition: zero or non-finite norm");
    const double f = 1.0 / std::sqrt(n2);
    for (auto& t : sp.terms) t.weight *= f;
    return LineState(std::move(sp), u);
}

} // namespace zak
