#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace zak {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Elementary displacements of the line. Only two of hbar, x0, p0 are free:
/// p0 * x0 == 2*pi*hbar always holds.
class UnitsConfig {
public:
    /// Symmetric default: hbar = 1, x0 = p0 = sqrt(2*pi).
    UnitsConfig() : UnitsConfig(1.0, std::sqrt(two_pi)) {}

    UnitsConfig(double hbar, double x0) : hbar_(hbar), x0_(x0) {
        if (!(hbar > 0.0) || !(x0 > 0.0) || !std::isfinite(hbar) || !std::isfinite(x0))
            throw std::invalid_argument("UnitsConfig: hbar and x0 must be positive and finite");
        p0_ = two_pi * hbar_ / x0_;
    }

    static UnitsConfig from_momentum(double hbar, double p0) {
        if (!(p0 > 0.0)) throw std::invalid_argument("UnitsConfig: p0 must be positive");
        return UnitsConfig(hbar, two_pi * hbar / p0);
    }

    double hbar() const noexcept { return hbar_; }
    double x0() const noexcept { return x0_; }
    double p0() const noexcept { return p0_; }

    // dimensionless coordinates x/x0 and p/p0
    double xi(double x) const noexcept { return x / x0_; }
    double eta(double p) const noexcept { return p / p0_; }

    bool operator==(const UnitsConfig&) const = default;

private:
    double hbar_;
    double x0_;
    double p0_;
};

} // namespace zak
