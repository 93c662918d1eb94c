#pragma once
/// @file eos.hpp
/// @brief Synge equation of state for a relativistic Boltzmann gas.
///
/// With zeta = rho / p the specific enthalpy is h = G(zeta) = K_3(zeta) / K_2(zeta).
/// For large zeta the quantities G - 1 and G' are tiny differences of O(1)
/// numbers, so above kAsymptoticZeta they are summed directly from the
/// asymptotic expansion of K_nu with the cancelling leading terms removed
/// analytically.

#include "srgk/bessel.hpp"
#include "srgk/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace srgk {

/// Thermodynamic quantities at a given zeta = rho / p.
struct EosEval {
    double zeta = 0.0;
    double G = 0.0;       ///< specific enthalpy h
    double Gm1 = 0.0;     ///< G - 1, accurate when G is close to 1
    double e = 0.0;       ///< specific internal energy G - 1/zeta - 1
    double Gprime = 0.0;  ///< dG/dzeta = G^2 - 5G/zeta - 1
    double cs2 = 0.0;     ///< squared sound speed
    double cs = 0.0;
};

inline constexpr double kAsymptoticZeta = 30.0;
inline constexpr double kTinyZeta = 1e-8;

namespace detail {

/// Asymptotic branch: x = 1/zeta small. K_nu ~ sqrt(pi/2z) e^{-z} sum_k a_k(nu) x^k.
inline EosEval eos_asymptotic(double zeta) {
    const double x = 1.0 / zeta;
    double a2 = 1.0, a3 = 1.0;         // a_k(2), a_k(3)
    double a2_prev = 0.0;              // a_{k-1}(2)
    double s2 = 1.0;                   // sum a_k(2) x^k
    double d = 0.0;                    // sum (a_k(3) - a_k(2)) x^k
    double ex = 0.0;                   // sum (a_k(3) - a_k(2) - 2.5 a_{k-1}(2)) x^k
    double xk = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        a2_prev = a2;
        a2 *= (16.0 - odd * odd) / (8.0 * k);
        a3 *= (36.0 - odd * odd) / (8.0 * k);
        xk *= x;
        const double td = (a3 - a2) * xk;
        s2 += a2 * xk;
        d += td;
        ex += (a3 - a2 - 2.5 * a2_prev) * xk;
        if (std::abs(td) < 1e-18 * std::abs(d) && k > 3) break;
    }
    EosEval r;
    r.zeta = zeta;
    r.Gm1 = d / s2;
    r.G = 1.0 + r.Gm1;
    r.e = r.Gm1 - x;
    const double E = ex / s2;  // G - 1 - 5x/2
    r.Gprime = 2.0 * E + r.Gm1 * (E - 2.5 * x);
    return r;
}

inline EosEval eos_small(double zeta) {
    EosEval r;
    r.zeta = zeta;
    r.G = 4.0 / zeta + 0.5 * zeta;
    r.Gm1 = r.G - 1.0;
    r.e = 3.0 / zeta + 0.5 * zeta - 1.0;
    r.Gprime = -4.0 / (zeta * zeta) + 0.5;
    return r;
}

inline EosEval eos_bessel(double zeta) {
    const auto k = bessel::scaled_k_table<4>(zeta);
    EosEval r;
    r.zeta = zeta;
    r.G = k[3] / k[2];
    r.Gm1 = (k[3] - k[2]) / k[2];
    r.e = r.Gm1 - 1.0 / zeta;
    r.Gprime = r.G * r.G - 5.0 * r.G / zeta - 1.0;
    return r;
}

}  // namespace detail

/// Full EOS evaluation at zeta > 0.
inline EosEval eos_eval(double zeta) {
    if (!(zeta > 0.0) || !std::isfinite(zeta)) throw DomainError("eos: zeta must be positive and finite");
    EosEval r = zeta >= kAsymptoticZeta ? detail::eos_asymptotic(zeta)
                : zeta < kTinyZeta      ? detail::eos_small(zeta)
                                        : detail::eos_bessel(zeta);
    // cs^2 = (G'/G) / (1/zeta + zeta G') written with x = 1/zeta
    const double x = 1.0 / zeta;
    r.cs2 = r.Gprime / (r.G * x * (1.0 + r.Gprime * zeta * zeta));
    r.cs = std::sqrt(r.cs2);
    return r;
}

/// G(zeta) = K_3 / K_2.
inline double enthalpy_G(double zeta) { return eos_eval(zeta).G; }

/// dG/dzeta.
inline double enthalpy_G_prime(double zeta) { return eos_eval(zeta).Gprime; }

inline double sound_speed(double zeta) { return eos_eval(zeta).cs; }

// ---------------------------------------------------------------------------
// Primitive / conserved conversion

template <int Dim>
StateVec<Dim> to_conserved(const Primitive<Dim>& v) {
    if (!admissible(v)) throw NonPhysicalState("to_conserved: inadmissible primitive state");
    const double w = v.lorentz();
    const double G = enthalpy_G(v.rho / v.p);
    const double rhw2 = v.rho * G * w * w;
    StateVec<Dim> c;
    c(0) = v.rho * w;
    for (int i = 0; i < Dim; ++i) c(1 + i) = rhw2 * v.u[i];
    c(Dim + 1) = rhw2 - v.p;
    return c;
}

/// Recover (rho, u, p) from (D, m, E).
///
/// Solves R(p) = D W (G - 1) + D (W - 1) - (E - D) - p = 0 by Newton's method
/// safeguarded with bisection in log p.
template <int Dim>
Primitive<Dim> to_primitive(const StateVec<Dim>& c) {
    const double D = c(0);
    const double E = c(Dim + 1);
    double m2 = 0.0;
    for (int i = 0; i < Dim; ++i) m2 += c(1 + i) * c(1 + i);
    const double m = std::sqrt(m2);
    if (!std::isfinite(D) || !std::isfinite(E) || !std::isfinite(m) || D <= 0.0 || E <= m ||
        E * E <= m2 + D * D) {
        throw NonPhysicalState("to_primitive: conserved state outside the admissible set");
    }
    const double emd = E - D;

    struct Eval {
        double r, dr;
    };
    auto residual = [&](double p) -> Eval {
        const double s = E + p;
        const double v2 = m2 / (s * s);
        const double w = 1.0 / std::sqrt(1.0 - v2);
        const double wm1 = v2 * w * w / (w + 1.0);
        const double rho = D / w;
        const double zeta = rho / p;
        const EosEval th = eos_eval(zeta);
        const double r = D * w * th.Gm1 + D * wm1 - emd - p;
        const double dw = -w * w * w * v2 / s;
        const double drho = D * w * v2 / s;
        const double dzeta = drho / p - rho / (p * p);
        const double dr = D * (th.Gprime * dzeta * w + th.G * dw) - 1.0;
        return {r, dr};
    };

    // p lies in (0, E/3]: rest-frame energy density is at least 3p.
    double lo = std::max(1e-300, 1e-30 * E);
    double hi = E / 3.0;
    Eval flo = residual(lo);
    Eval fhi = residual(hi);
    if (flo.r == 0.0) hi = lo;
    if (fhi.r == 0.0) lo = hi;
    if (lo < hi && (flo.r > 0.0) == (fhi.r > 0.0)) {
        throw NonPhysicalState("to_primitive: pressure residual has no sign change");
    }
    const bool increasing = fhi.r > flo.r;

    double p = std::clamp(std::max(1e-14, (E - m) / 3.0), lo, hi);
    bool converged = lo == hi;
    if (converged) p = lo;
    for (int it = 0; it < 100 && !converged; ++it) {
        const Eval f = residual(p);
        if (f.r == 0.0) {
            converged = true;
            break;
        }
        if ((f.r > 0.0) == increasing) hi = p;
        else lo = p;
        double next = p - f.r / f.dr;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = std::sqrt(lo * hi);
        // E + p is only known to within its own rounding, which bounds the attainable accuracy
        const double floor_abs = 4.0 * std::numeric_limits<double>::epsilon() * (E + p);
        if (std::abs(next - p) <= 1e-13 * p + floor_abs || (hi - lo) <= 1e-14 * hi + floor_abs) {
            p = next;
            converged = true;
            break;
        }
        p = next;
    }
    if (!converged) throw ConvergenceFailure("to_primitive: pressure iteration did not converge");

    Primitive<Dim> v;
    const double s = E + p;
    const double w = 1.0 / std::sqrt(1.0 - m2 / (s * s));
    v.rho = D / w;
    for (int i = 0; i < Dim; ++i) v.u[i] = c(1 + i) / s;
    v.p = p;
    if (!admissible(v)) throw NonPhysicalState("to_primitive: recovered state is inadmissible");
    return v;
}

/// Physical flux along `axis` (1-based), in conserved ordering.
template <int Dim>
StateVec<Dim> physical_flux(const Primitive<Dim>& v, int axis = 1) {
    const StateVec<Dim> c = to_conserved(v);
    const double un = v.u[axis - 1];
    StateVec<Dim> f = c * un;
    f(axis) += v.p;
    f(Dim + 1) += v.p * un;
    return f;
}

/// Characteristic speeds along `axis`: lambda-, then lambda0 repeated Dim times, then lambda+.
template <int Dim>
std::array<double, Dim + 2> eigenvalues(const Primitive<Dim>& v, int axis = 1) {
    const double cs2 = eos_eval(v.rho / v.p).cs2;
    const double cs = std::sqrt(cs2);
    const double un = v.u[axis - 1];
    const double q2 = v.speed_squared();
    const double w = 1.0 / std::sqrt(1.0 - q2);
    const double root = std::sqrt(std::max(0.0, 1.0 - un * un - (q2 - un * un) * cs2));
    const double den = w * (1.0 - q2 * cs2);
    std::array<double, Dim + 2> lam{};
    lam[0] = (w * un * (1.0 - cs2) - cs * root) / den;
    for (int i = 0; i < Dim; ++i) lam[1 + i] = un;
    lam[Dim + 1] = (w * un * (1.0 - cs2) + cs * root) / den;
    return lam;
}

/// Largest |lambda| along one axis.
template <int Dim>
double spectral_radius(const Primitive<Dim>& v, int axis) {
    const auto lam = eigenvalues(v, axis);
    return std::max(std::abs(lam.front()), std::abs(lam.back()));
}

/// Largest |lambda| over every axis.
template <int Dim>
double spectral_radius(const Primitive<Dim>& v) {
    double r = 0.0;
    for (int a = 1; a <= Dim; ++a) r = std::max(r, spectral_radius(v, a));
    return r;
}

// ---------------------------------------------------------------------------
// Equilibrium parameters

/// Parameters (rho, U, zeta) of a Juettner distribution.
/// U holds the contravariant components U^0..U^Dim.
template <int Dim>
struct EquilibriumSpec {
    double rho = 1.0;
    std::array<double, Dim + 1> U{1.0};
    double zeta = 1.0;

    static EquilibriumSpec from_primitive(const Primitive<Dim>& v) {
        EquilibriumSpec s;
        const double w = v.lorentz();
        s.rho = v.rho;
        s.U[0] = w;
        for (int i = 0; i < Dim; ++i) s.U[1 + i] = w * v.u[i];
        s.zeta = v.rho / v.p;
        return s;
    }
    Primitive<Dim> primitive() const {
        Primitive<Dim> v;
        v.rho = rho;
        for (int i = 0; i < Dim; ++i) v.u[i] = U[1 + i] / U[0];
        v.p = rho / zeta;
        return v;
    }
    /// (U^1)^2 + ... + (U^Dim)^2
    double spatial_norm2() const {
        double s = 0.0;
        for (int i = 1; i <= Dim; ++i) s += U[i] * U[i];
        return s;
    }
};

/// Output of the Landau-Lifshitz recovery.
template <int Dim>
struct EquilibriumFromMoments {
    EquilibriumSpec<Dim> spec;
    double energy_density = 0.0;  ///< eigenvalue epsilon of T g
};

/// Solve e(zeta) = G - 1/zeta - 1 = target for zeta (e is strictly decreasing).
inline double zeta_from_internal_energy(double target) {
    if (!(target > 0.0) || !std::isfinite(target)) {
        throw NonPhysicalState("equilibrium: non-positive specific internal energy");
    }
    // e ~ 3/zeta for small zeta and ~ 1.5/zeta for large zeta
    double s = std::log((1.5 + 3.0 * target) / (target * (1.0 + target)));
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; ++it) {
        const double zeta = std::exp(s);
        const EosEval th = eos_eval(zeta);
        const double f = th.e - target;
        if (f == 0.0) return zeta;
        if (f > 0.0) lo = s;  // e too large: zeta must grow
        else hi = s;
        const double df = zeta * (th.Gprime + 1.0 / (zeta * zeta));
        double next = s - f / df;
        if (!(next > lo && next < hi) || !std::isfinite(next)) {
            if (std::isfinite(lo) && std::isfinite(hi)) next = 0.5 * (lo + hi);
            else next = f > 0.0 ? s + 1.0 : s - 1.0;
        }
        if (std::abs(next - s) < 1e-15 * std::max(1.0, std::abs(s))) return std::exp(next);
        s = next;
    }
    throw ConvergenceFailure("equilibrium: zeta iteration did not converge");
}

namespace detail {

/// Largest real root of x^3 + a x^2 + b x + c.
inline double largest_cubic_root(double a, double b, double c) {
    const double q = (a * a - 3.0 * b) / 9.0;
    const double r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    double x;
    if (q > 0.0 && r * r < q * q * q) {
        const double th = std::acos(std::clamp(r / std::sqrt(q * q * q), -1.0, 1.0));
        x = -2.0 * std::sqrt(q) * std::cos((th + 2.0 * std::numbers::pi) / 3.0) - a / 3.0;
    } else {
        const double big = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r * r - q * q * q)), r);
        const double small = big == 0.0 ? 0.0 : q / big;
        x = big + small - a / 3.0;
    }
    for (int it = 0; it < 3; ++it) {
        const double f = ((x + a) * x + b) * x + c;
        const double df = (3.0 * x + 2.0 * a) * x + b;
        if (df == 0.0) break;
        x -= f / df;
    }
    return x;
}

}  // namespace detail

/// Landau-Lifshitz frame of (N, T): U solves T g U = epsilon U with U timelike.
/// N holds N^0..N^Dim and T the contravariant stress-energy tensor.
template <int Dim>
EquilibriumFromMoments<Dim> equilibrium_from_moments(const Eigen::Matrix<double, Dim + 1, 1>& N,
                                                     const Eigen::Matrix<double, Dim + 1, Dim + 1>& T) {
    using Vec = Eigen::Matrix<double, Dim + 1, 1>;
    using Mat = Eigen::Matrix<double, Dim + 1, Dim + 1>;
    if (!N.allFinite() || !T.allFinite()) throw NonPhysicalState("equilibrium: non-finite moments");
    Vec metric = Vec::Constant(-1.0);
    metric(0) = 1.0;
    const Mat Tg = T * metric.asDiagonal();

    double eps;
    Vec U;
    if constexpr (Dim == 1) {
        const double t00 = T(0, 0), t01 = T(0, 1), t11 = T(1, 1);
        const double disc = (t00 + t11) * (t00 + t11) - 4.0 * t01 * t01;
        if (!(disc >= 0.0)) throw NonPhysicalState("equilibrium: no timelike eigenvector");
        eps = 0.5 * ((t00 - t11) + std::sqrt(disc));
        U << t11 + eps, t01;
    } else {
        const double a = -Tg.trace();
        const double b = Tg(0, 0) * Tg(1, 1) - Tg(0, 1) * Tg(1, 0) + Tg(0, 0) * Tg(2, 2) -
                         Tg(0, 2) * Tg(2, 0) + Tg(1, 1) * Tg(2, 2) - Tg(1, 2) * Tg(2, 1);
        const double c = -Tg.determinant();
        eps = detail::largest_cubic_root(a, b, c);
        const Mat A = Tg - eps * Mat::Identity();
        const Eigen::Vector3d r0 = A.row(0).transpose(), r1 = A.row(1).transpose(), r2 = A.row(2).transpose();
        const Eigen::Vector3d c01 = r0.cross(r1), c02 = r0.cross(r2), c12 = r1.cross(r2);
        const double n01 = c01.squaredNorm(), n02 = c02.squaredNorm(), n12 = c12.squaredNorm();
        U = n01 >= n02 && n01 >= n12 ? c01 : (n02 >= n12 ? c02 : c12);
    }
    if (U(0) < 0.0) U = -U;
    double norm2 = U(0) * U(0);
    for (int i = 1; i <= Dim; ++i) norm2 -= U(i) * U(i);
    if (!(eps > 0.0) || !(norm2 > 0.0) || !(U(0) > 0.0)) {
        throw NonPhysicalState("equilibrium: stress-energy tensor has no timelike frame");
    }
    U /= std::sqrt(norm2);

    double rho0 = U(0) * N(0);
    for (int i = 1; i <= Dim; ++i) rho0 -= U(i) * N(i);
    if (!(rho0 > 0.0)) throw NonPhysicalState("equilibrium: non-positive rest density");

    EquilibriumFromMoments<Dim> out;
    out.energy_density = eps;
    out.spec.rho = rho0;
    for (int i = 0; i <= Dim; ++i) out.spec.U[i] = U(i);
    out.spec.zeta = zeta_from_internal_energy(eps / rho0 - 1.0);
    return out;
}

}  // namespace srgk
