#pragma once

// Test-only oracles, kept independent of the library's quadrature and
// closed-form paths: composite Simpson in 1-D and iterated closed-form
// antiderivatives for the monomial integrals.

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

// composite Simpson on [a, b]
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / (2.0 * panels);
    double acc = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// int_0^1 r^p dr = 1/(p+1)
inline double unit_power_moment(double p) { return 1.0 / (p + 1.0); }

// int_0^1 r^a ln(1/r) dr = 1/(a+1)^2
inline double log_moment(double a) { return 1.0 / ((a + 1.0) * (a + 1.0)); }

// disk Bergman monomial norm by the antiderivative: 2 pi / (2m + 2)
inline double disk_norm_sq(int m) { return M_PI / (m + 1.0); }

// ball (n = 2) monomial norm via the iterated triangle reduction:
// (2 pi)^2 * (1/4) * int_0^1 u^a (1-u)^{b+1} / (b+1) du, by Simpson
inline double ball2_norm_sq(int a, int b) {
    auto f = [&](double u) { return std::pow(u, a) * std::pow(1.0 - u, b + 1) / (b + 1.0); };
    return 4.0 * M_PI * M_PI * 0.25 * simpson(f, 0.0, 1.0, 4000);
}

// Hartogs triangle norm by iterated antiderivatives:
// 4 pi^2 int_0^1 int_0^{r2} r1^{2a+1} r2^{2b+1} dr1 dr2
//   = 4 pi^2 / (2a+2) * 1 / (2a + 2b + 4)
inline double hartogs_norm_sq(int a1, int a2) {
    return 4.0 * M_PI * M_PI / ((2.0 * a1 + 2.0) * (2.0 * a1 + 2.0 * a2 + 4.0));
}

// poly-annulus axis factor 2 pi int_lo^hi r^{2m+1} dr by Simpson
inline double annulus_axis_norm_sq(int m, double lo, double hi) {
    auto f = [&](double r) { return std::pow(r, 2 * m + 1); };
    return 2.0 * M_PI * simpson(f, lo, hi, 2000);
}

// geometric series sum_{m=0..} z^m = 1/(1-z)
inline std::complex<double> geometric(std::complex<double> z) {
    return 1.0 / (1.0 - z);
}

// disk Bergman kernel sum (m+1)/pi z^m = 1/(pi (1-z)^2)
inline std::complex<double> disk_kernel(std::complex<double> z) {
    const std::complex<double> d = 1.0 - z;
    return 1.0 / (M_PI * d * d);
}

} // namespace oracle
