#pragma once
/// @file moments.hpp
/// @brief Moments of the Maxwell-Juettner distribution and the slope solves.
///
/// The equilibrium is g = rho zeta / (4 pi K_2(zeta)) exp(-zeta U_a p^a) with
/// the invariant measure dXi = d^3p / p^0. The moment vector is
/// Psi = (1, p^1[, p^2], p^0), so the conserved variables are W = <p^0 Psi g>.

#include "srgk/bessel.hpp"
#include "srgk/eos.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace srgk {

/// Rest-frame moment <(p'^0)^l g>.
inline double rest_moment(int l, double rho, double zeta) {
    if (l < 0) throw DomainError("rest_moment: order must be non-negative");
    if (!(rho > 0.0) || !(zeta > 0.0)) throw DomainError("rest_moment: rho and zeta must be positive");
    const double x = 1.0 / zeta;
    switch (l) {
        case 0: {
            if (zeta >= kAsymptoticZeta) {
                const EosEval th = eos_eval(zeta);
                return rho * (th.Gm1 + 1.0 - 4.0 * x);
            }
            const auto k = bessel::scaled_k_table<3>(zeta);
            return rho * k[1] / k[2];
        }
        case 1: return rho;
        case 2: return rho * (eos_eval(zeta).G - x);
        case 3: return rho * (3.0 * eos_eval(zeta).G * x + 1.0);
        default: break;
    }
    // cosh^n = 2^-n sum_i C(n,i) cosh((n-2i) chi) and sinh^2 = cosh^2 - 1
    auto cosh_moment = [zeta](int n) {
        double binom = 1.0, s = 0.0;
        for (int i = 0; i <= n; ++i) {
            s += binom * bessel::scaled_kn(n - 2 * i, zeta);
            binom = binom * (n - i) / (i + 1.0);
        }
        return std::ldexp(s, -n);
    };
    const double k2 = bessel::scaled_kn(2, zeta);
    return rho * zeta / k2 * (cosh_moment(l + 2) - cosh_moment(l));
}

/// Lorentz boost taking the rest frame of U to the lab frame, p = Lambda p'.
/// Built from U = (U^0, U^1, U^2) with U^3 = 0.
inline Eigen::Matrix4d boost_matrix(double u0, double u1, double u2 = 0.0) {
    Eigen::Matrix4d L = Eigen::Matrix4d::Identity();
    const double u[3] = {u1, u2, 0.0};
    L(0, 0) = u0;
    for (int i = 0; i < 3; ++i) {
        L(0, 1 + i) = u[i];
        L(1 + i, 0) = u[i];
        for (int j = 0; j < 3; ++j) L(1 + i, 1 + j) += u[i] * u[j] / (u0 + 1.0);
    }
    return L;
}

template <int Dim>
inline Eigen::Matrix4d boost_matrix(const EquilibriumSpec<Dim>& s) {
    if constexpr (Dim > 1) return boost_matrix(s.U[0], s.U[1], s.U[2]);
    else return boost_matrix(s.U[0], s.U[1]);
}

/// Lab-frame tensors N^a, T^ab, R^abc for a, b, c in 0..Dim.
template <int Dim>
struct MomentTensors {
    static constexpr int n = Dim + 1;
    Eigen::Matrix<double, n, 1> N;
    Eigen::Matrix<double, n, n> T;
    std::array<double, n * n * n> R{};
    double& r(int a, int b, int c) { return R[static_cast<std::size_t>((a * n + b) * n + c)]; }
    double r(int a, int b, int c) const { return R[static_cast<std::size_t>((a * n + b) * n + c)]; }
};

/// Covariant closed forms:
/// N = rho U, T = rho G U U - p g, R = A U U U + B sym(U h) with h = U U - g,
/// A = rho (3G/zeta + 1), B = rho G / zeta.
template <int Dim>
MomentTensors<Dim> moment_tensors(const EquilibriumSpec<Dim>& s) {
    constexpr int n = Dim + 1;
    const EosEval th = eos_eval(s.zeta);
    const double p = s.rho / s.zeta;
    const double A = s.rho * (3.0 * th.G / s.zeta + 1.0);
    const double B = s.rho * th.G / s.zeta;
    auto g = [](int a, int b) { return a != b ? 0.0 : (a == 0 ? 1.0 : -1.0); };
    auto h = [&](int a, int b) { return s.U[a] * s.U[b] - g(a, b); };
    MomentTensors<Dim> m;
    for (int a = 0; a < n; ++a) {
        m.N(a) = s.rho * s.U[a];
        for (int b = 0; b < n; ++b) {
            m.T(a, b) = s.rho * th.G * s.U[a] * s.U[b] - p * g(a, b);
            for (int c = 0; c < n; ++c) {
                m.r(a, b, c) = A * s.U[a] * s.U[b] * s.U[c] +
                               B * (s.U[a] * h(b, c) + s.U[b] * h(a, c) + s.U[c] * h(a, b));
            }
        }
    }
    return m;
}

/// M_k[i][j] = <p^k Psi_i Psi_j g>, k = 0..Dim.
template <int Dim>
struct MomentMatrices {
    std::array<StateMat<Dim>, Dim + 1> M;
    const StateMat<Dim>& operator[](int k) const { return M[static_cast<std::size_t>(k)]; }
    StateMat<Dim>& operator[](int k) { return M[static_cast<std::size_t>(k)]; }
};

namespace detail {
/// Momentum index carried by Psi_i: -1 for the constant, otherwise 0..Dim.
template <int Dim>
constexpr int psi_index(int i) {
    return i == 0 ? -1 : (i == Dim + 1 ? 0 : i);
}
}  // namespace detail

/// Moment matrices from the rest-frame moments transported by the boost.
template <int Dim>
MomentMatrices<Dim> m_matrices(const EquilibriumSpec<Dim>& s) {
    constexpr int n = Dim + 1;
    const EosEval th = eos_eval(s.zeta);
    const double x = 1.0 / s.zeta;
    const double p = s.rho * x;
    const double t00 = s.rho * (th.G - x);
    const double r000 = s.rho * (3.0 * th.G * x + 1.0);
    const double r0ii = s.rho * th.G * x;
    const Eigen::Matrix4d L = boost_matrix(s);

    double N[n], T[n][n], R[n][n][n];
    for (int a = 0; a < n; ++a) {
        N[a] = s.rho * L(a, 0);
        for (int b = 0; b < n; ++b) {
            double sp = 0.0;
            for (int i = 1; i <= 3; ++i) sp += L(a, i) * L(b, i);
            T[a][b] = t00 * L(a, 0) * L(b, 0) + p * sp;
            for (int c = 0; c < n; ++c) {
                double mix = 0.0;
                for (int i = 1; i <= 3; ++i) {
                    mix += L(a, 0) * L(b, i) * L(c, i) + L(a, i) * L(b, 0) * L(c, i) +
                           L(a, i) * L(b, i) * L(c, 0);
                }
                R[a][b][c] = r000 * L(a, 0) * L(b, 0) * L(c, 0) + r0ii * mix;
            }
        }
    }

    MomentMatrices<Dim> out;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < Dim + 2; ++i) {
            for (int j = 0; j < Dim + 2; ++j) {
                const int a = detail::psi_index<Dim>(i), b = detail::psi_index<Dim>(j);
                double v;
                if (a < 0 && b < 0) v = N[k];
                else if (a < 0) v = T[k][b];
                else if (b < 0) v = T[k][a];
                else v = R[k][a][b];
                out[k](i, j) = v;
            }
        }
    }
    return out;
}

/// The same matrices contracted from the covariant tensors of moment_tensors().
template <int Dim>
MomentMatrices<Dim> m_matrices_from_tensors(const EquilibriumSpec<Dim>& s) {
    const MomentTensors<Dim> t = moment_tensors(s);
    MomentMatrices<Dim> out;
    for (int k = 0; k <= Dim; ++k)
        for (int i = 0; i < Dim + 2; ++i)
            for (int j = 0; j < Dim + 2; ++j) {
                const int a = detail::psi_index<Dim>(i), b = detail::psi_index<Dim>(j);
                out[k](i, j) = a < 0 && b < 0 ? t.N(k)
                               : a < 0        ? t.T(k, b)
                               : b < 0        ? t.T(k, a)
                                              : t.r(k, a, b);
            }
    return out;
}

/// Expansion coefficients of the equilibrium's space and time derivatives.
/// Each vector multiplies Psi, e.g. a(p) = a_0 + a_1 p^1 [+ a_2 p^2] + a_{Dim+1} p^0.
template <int Dim>
struct SlopeCoefficients {
    StateVec<Dim> a = StateVec<Dim>::Zero();
    StateVec<Dim> b = StateVec<Dim>::Zero();
    StateVec<Dim> A = StateVec<Dim>::Zero();
};

/// Solve M0 a = Wx, M0 b = Wy and M0 A = -(M1 a + M2 b).
template <int Dim>
SlopeCoefficients<Dim> solve_slopes(const MomentMatrices<Dim>& m, const StateVec<Dim>& wx,
                                    const StateVec<Dim>& wy = StateVec<Dim>::Zero()) {
    const Eigen::LLT<StateMat<Dim>> llt(m[0]);
    if (llt.info() != Eigen::Success) throw SingularMatrix("solve_slopes: M0 is not positive definite");
    SlopeCoefficients<Dim> c;
    c.a = llt.solve(wx);
    StateVec<Dim> rhs = m[1] * c.a;
    if constexpr (Dim > 1) {
        c.b = llt.solve(wy);
        rhs += m[2] * c.b;
    }
    c.A = -llt.solve(rhs);
    if (!c.a.allFinite() || !c.A.allFinite()) throw SingularMatrix("solve_slopes: non-finite solution");
    return c;
}

template <int Dim>
SlopeCoefficients<Dim> solve_slopes(const EquilibriumSpec<Dim>& s, const StateVec<Dim>& wx,
                                    const StateVec<Dim>& wy = StateVec<Dim>::Zero()) {
    return solve_slopes(m_matrices(s), wx, wy);
}

}  // namespace srgk
