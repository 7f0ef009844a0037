#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace zak {

/// Thrown when an adaptive scheme cannot meet its tolerance; carries the
/// error estimate that was achieved.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate)
        : std::runtime_error(what + " (achieved error estimate " + std::to_string(estimate) + ")"),
          estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_intervals = 4000;
    bool throw_on_failure = false;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        error += o.error;
        evaluations += o.evaluations;
        converged = converged && o.converged;
        return *this;
    }
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

// 21-point Kronrod rule with embedded 10-point Gauss rule (QUADPACK qk21).
inline constexpr double gk21_x[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr double gk21_wk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double gk21_wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F, class T = std::invoke_result_t<F, double>>
Segment<T> gk21(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T fc = f(c);
    T kron = fc * gk21_wk[10];
    T gauss{};
    T fv[21];
    fv[20] = fc;
    for (int i = 0; i < 10; ++i) {
        const double dx = h * gk21_x[i];
        T f1 = f(c - dx);
        T f2 = f(c + dx);
        fv[2 * i] = f1;
        fv[2 * i + 1] = f2;
        kron += gk21_wk[i] * (f1 + f2);
        if (i % 2 == 1) gauss += gk21_wg[i / 2] * (f1 + f2);
    }
    const T mean = kron * 0.5;
    double resasc = gk21_wk[10] * magnitude(fc - mean);
    for (int i = 0; i < 10; ++i)
        resasc += gk21_wk[i] * (magnitude(fv[2 * i] - mean) + magnitude(fv[2 * i + 1] - mean));
    resasc *= std::abs(h);
    double err = magnitude((kron - gauss) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {a, b, kron * h, std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * magnitude(kron * h))};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (21-point) integration of f over [a, b].
/// f may return double or std::complex<double>.
template <class F, class T = std::invoke_result_t<F, double>>
QuadResult<T> integrate(const F& f, double a, double b, const QuadOptions& opt = {}) {
    QuadResult<T> out;
    if (a == b) return out;
    std::priority_queue<detail::Segment<T>> heap;
    auto first = detail::gk21(f, a, b);
    T total = first.value;
    double err = first.error;
    heap.push(first);
    int intervals = 1;
    while (err > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total))) {
        if (intervals >= opt.max_intervals) {
            out.converged = false;
            break;
        }
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) { // interval exhausted at machine precision
            out.converged = false;
            heap.push(worst);
            break;
        }
        auto left = detail::gk21(f, worst.a, mid);
        auto right = detail::gk21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    // re-sum to limit drift from the incremental updates
    T sum{};
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    out.value = sum;
    out.error = esum;
    out.evaluations = 21L * (2L * intervals - 1L);
    if (!out.converged && opt.throw_on_failure)
        throw ConvergenceError("adaptive quadrature did not converge", esum);
    return out;
}

/// Integrates over [points.front(), points.back()], splitting at every
/// interior point (typically known discontinuities of the integrand).
template <class F, class T = std::invoke_result_t<F, double>>
QuadResult<T> integrate_pieces(const F& f, std::vector<double> points, const QuadOptions& opt = {}) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    QuadResult<T> out;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) out += integrate(f, points[i], points[i + 1], opt);
    if (!out.converged && opt.throw_on_failure)
        throw ConvergenceError("piecewise quadrature did not converge", out.error);
    return out;
}

/// All points c + k*period (k integer) inside the open interval (lo, hi),
/// together with lo and hi themselves.
inline std::vector<double> lattice_breaks(double lo, double hi, double offset, double period) {
    std::vector<double> pts{lo};
    const double k0 = std::ceil((lo - offset) / period);
    for (double k = k0;; k += 1.0) {
        const double t = offset + k * period;
        if (t >= hi) break;
        if (t > lo) pts.push_back(t);
    }
    pts.push_back(hi);
    return pts;
}

} // namespace zak
