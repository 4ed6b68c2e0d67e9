#pragma once

// Sine and cosine integrals.
//
//   Si(x) = int_0^x sin t / t dt
//   Ci(x) = gamma + ln x + int_0^x (cos t - 1) / t dt
//
// Three regimes, chosen so every branch stays well below 1e-10 absolute error:
//   |x| <= 4      power series (largest term ~ 4^n/n! keeps cancellation to 1 digit)
//   4 < |x| < 40  continued fraction for E1(ix) = -Ci(x) + i(Si(x) - pi/2)
//   |x| >= 40     asymptotic series of the auxiliary functions f, g,
//                 truncated before its smallest term (< 1e-16 at x = 40)

#include <cmath>
#include <complex>
#include <numbers>

#include "rmtnet/error.hpp"

namespace rmtnet {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

namespace detail {

inline constexpr double si_series_max = 4.0;
inline constexpr double si_asymptotic_min = 40.0;

// f(x), g(x) with Si = pi/2 - f cos x - g sin x, Ci = f sin x - g cos x.
struct aux_fg {
    double f, g;
};

inline aux_fg aux_continued_fraction(double x) {
    using cplx = std::complex<double>;
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    cplx b(1.0, x);
    cplx c(1.0 / tiny, 0.0);
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 2; i < 1000; ++i) {
        const double a = -static_cast<double>(i - 1) * static_cast<double>(i - 1);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps) {
            // h = e^{ix} E1(ix) = g(x) - i f(x)
            return {-h.imag(), h.real()};
        }
    }
    throw numerical_error("sine/cosine integral continued fraction did not converge");
}

inline aux_fg aux_asymptotic(double x) {
    // f ~ (1/x)  sum (-1)^k (2k)!   / x^{2k}
    // g ~ (1/x^2) sum (-1)^k (2k+1)! / x^{2k}
    const double inv2 = 1.0 / (x * x);
    double f = 0.0, g = 0.0;
    double tf = 1.0, tg = 1.0;
    double prev = INFINITY;
    for (int k = 0; k < 60; ++k) {
        if (std::abs(tf) > prev) break;
        prev = std::abs(tf);
        f += tf;
        g += tg;
        const double m = 2.0 * k;
        tf *= -(m + 1.0) * (m + 2.0) * inv2;
        tg *= -(m + 2.0) * (m + 3.0) * inv2;
    }
    return {f / x, g * inv2};
}

inline aux_fg aux(double x) { return x >= si_asymptotic_min ? aux_asymptotic(x) : aux_continued_fraction(x); }

}  // namespace detail

inline double sin_integral(double x) {
    if (x < 0.0) return -sin_integral(-x);
    if (x == 0.0) return 0.0;
    if (x <= detail::si_series_max) {
        const double x2 = x * x;
        double term = x;  // (-1)^k x^{2k+1} / (2k+1)!
        double sum = x;
        for (int k = 1; k < 60; ++k) {
            term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
            const double add = term / (2.0 * k + 1.0);
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    const auto [f, g] = detail::aux(x);
    return std::numbers::pi / 2.0 - f * std::cos(x) - g * std::sin(x);
}

inline double cos_integral(double x) {
    if (!(x > 0.0)) throw domain_error("Ci(x) requires x > 0");
    if (x <= detail::si_series_max) {
        const double x2 = x * x;
        double term = 1.0;  // (-1)^k x^{2k} / (2k)!
        double sum = 0.0;
        for (int k = 1; k < 60; ++k) {
            term *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
            const double add = term / (2.0 * k);
            sum += add;
            if (std::abs(add) < 1e-17) break;
        }
        return euler_gamma + std::log(x) + sum;
    }
    const auto [f, g] = detail::aux(x);
    return f * std::sin(x) - g * std::cos(x);
}

inline double erfc(double x) { return std::erfc(x); }

}  // namespace rmtnet
