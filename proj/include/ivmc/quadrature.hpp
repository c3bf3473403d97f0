#ifndef IVMC_QUADRATURE_HPP
#define IVMC_QUADRATURE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "ivmc/errors.hpp"

namespace ivmc {

/// Composite Simpson rule over [a, b] with n subintervals (n is rounded up
/// to the next even count). Deterministic; used by the quadrature oracles.
template <typename F>
double simpson(F&& f, double a, double b, std::size_t n) {
    if (b <= a) return 0.0;
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double x = a + h * static_cast<double>(i);
        if (i % 2 != 0)
            odd += f(x);
        else
            even += f(x);
    }
    return (f(a) + f(b) + 4.0 * odd + 2.0 * even) * h / 3.0;
}

/// Mass and first moment of the standard normal kernel exp(-z^2/2) over
/// [za, zb], by Simpson with n subintervals. The kernel is unnormalized;
/// callers take ratios so common factors cancel.
inline std::pair<double, double> gauss_kernel_moments(double za, double zb, std::size_t n) {
    if (za < -40.0) za = -40.0;
    if (zb > 40.0) zb = 40.0;
    if (zb <= za) return {0.0, 0.0};
    const double mass = simpson([](double z) { return std::exp(-0.5 * z * z); }, za, zb, n);
    const double moment =
        simpson([](double z) { return z * std::exp(-0.5 * z * z); }, za, zb, n);
    return {mass, moment};
}

} // namespace ivmc

#endif
