#pragma once
/// @file bessel.hpp
/// @brief Exponentially scaled modified Bessel functions of the second kind.
///
/// All routines return e^x K_n(x). Small arguments use the ascending series,
/// larger ones Steed's continued fraction (CF2) for K_0 and K_1, and every
/// higher order comes from the upward recurrence, which is stable for K.

#include "srgk/core.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace srgk::bessel {

namespace detail {

/// e^x (K_0, K_1) by the ascending series, for 0 < x <= 2.
inline std::array<double, 2> k01_series(double x) {
    constexpr double euler_gamma = 0.57721566490153286061;
    const double y = 0.25 * x * x;
    const double lg = std::log(0.5 * x);
    // K0 = -(ln(x/2) + gamma) I0 + sum_k H_k y^k / (k!)^2
    // K1 = 1/x + ln(x/2) I1 - (x/4) sum_k (psi(k+1) + psi(k+2)) y^k / (k! (k+1)!)
    double t0 = 1.0;  // y^k / (k!)^2
    double t1 = 1.0;  // y^k / (k! (k+1)!)
    double harmonic = 0.0;
    double i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
    for (int k = 0; k < 60; ++k) {
        const double psi1 = -euler_gamma + harmonic;
        const double psi2 = psi1 + 1.0 / (k + 1);
        i0 += t0;
        i1 += t1;
        s0 += harmonic * t0;
        s1 += (psi1 + psi2) * t1;
        if (t0 < 1e-18 * i0 && k > 2) break;
        harmonic += 1.0 / (k + 1);
        t0 *= y / ((k + 1.0) * (k + 1.0));
        t1 *= y / ((k + 1.0) * (k + 2.0));
    }
    i1 *= 0.5 * x;
    const double k0 = -(lg + euler_gamma) * i0 + s0;
    const double k1 = 1.0 / x + lg * i1 - 0.25 * x * s1;
    const double ex = std::exp(x);
    return {ex * k0, ex * k1};
}

/// e^x (K_0, K_1) by Steed's algorithm for the CF2 continued fraction, x >= 2.
inline std::array<double, 2> k01_cf2(double x) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 10000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < 1e-17) break;
    }
    h = a1 * h;
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    const double k1 = k0 * (x + 0.5 - h) / x;
    return {k0, k1};
}

}  // namespace detail

/// e^x K_0(x) and e^x K_1(x).
inline std::array<double, 2> scaled_k01(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel: argument must be positive and finite");
    return x <= 2.0 ? detail::k01_series(x) : detail::k01_cf2(x);
}

/// e^x K_n(x) for n = 0..N-1, filled into an array.
template <int N>
std::array<double, N> scaled_k_table(double x) {
    static_assert(N >= 2);
    const auto k01 = scaled_k01(x);
    std::array<double, N> k{};
    k[0] = k01[0];
    k[1] = k01[1];
    for (int n = 1; n + 1 < N; ++n) k[n + 1] = k[n - 1] + (2.0 * n / x) * k[n];
    return k;
}

/// e^x K_n(x) for a single order n >= 0.
inline double scaled_kn(int n, double x) {
    if (n < 0) n = -n;
    auto k01 = scaled_k01(x);
    if (n == 0) return k01[0];
    double km = k01[0], k = k01[1];
    for (int m = 1; m < n; ++m) {
        const double kp = km + (2.0 * m / x) * k;
        km = k;
        k = kp;
    }
    return k;
}

}  // namespace srgk::bessel
