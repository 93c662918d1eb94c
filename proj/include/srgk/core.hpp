#pragma once
/// @file core.hpp
/// @brief State containers and error types shared by every module.
///
/// Units are m = c = k = 1. A state in Dim space dimensions has Dim + 2
/// components. Conserved vectors are ordered (D, m_1[, m_2], E) with
/// D = rho U^0, m_i = rho h U^0 U^i and E = rho h (U^0)^2 - p. Primitive
/// vectors are ordered (rho, u_1[, u_2], p).

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace srgk {

template <int Dim>
inline constexpr int kVars = Dim + 2;

template <int Dim>
using StateVec = Eigen::Matrix<double, Dim + 2, 1>;

template <int Dim>
using StateMat = Eigen::Matrix<double, Dim + 2, Dim + 2>;

/// Rest density, three-velocity and pressure.
template <int Dim>
struct Primitive {
    double rho = 1.0;
    std::array<double, Dim> u{};
    double p = 1.0;

    double speed_squared() const {
        double s = 0.0;
        for (double ui : u) s += ui * ui;
        return s;
    }
    double lorentz() const { return 1.0 / std::sqrt(1.0 - speed_squared()); }

    StateVec<Dim> as_vector() const {
        StateVec<Dim> v;
        v(0) = rho;
        for (int i = 0; i < Dim; ++i) v(1 + i) = u[i];
        v(Dim + 1) = p;
        return v;
    }
    static Primitive from_vector(const StateVec<Dim>& v) {
        Primitive q;
        q.rho = v(0);
        for (int i = 0; i < Dim; ++i) q.u[i] = v(1 + i);
        q.p = v(Dim + 1);
        return q;
    }
};

/// True when rho > 0, p > 0 and |u| < 1 (all finite).
template <int Dim>
bool admissible(const Primitive<Dim>& v) {
    const double s2 = v.speed_squared();
    return std::isfinite(v.rho) && std::isfinite(v.p) && std::isfinite(s2) && v.rho > 0.0 &&
           v.p > 0.0 && s2 < 1.0;
}

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a state leaves the admissible set (rho <= 0, p <= 0, |u| >= 1).
class NonPhysicalState : public Error {
  public:
    using Error::Error;
};

/// An iterative solve did not converge within its budget.
class ConvergenceFailure : public Error {
  public:
    using Error::Error;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureFailure : public Error {
  public:
    using Error::Error;
};

/// A moment matrix failed its Cholesky factorisation.
class SingularMatrix : public Error {
  public:
    using Error::Error;
};

/// Root bracketing failed in the exact Riemann solver.
class BracketFailure : public Error {
  public:
    using Error::Error;
};

/// The exact Riemann problem generates vacuum.
class VacuumFormation : public Error {
  public:
    using Error::Error;
};

/// Bad argument outside the mathematical domain of a routine.
class DomainError : public Error {
  public:
    using Error::Error;
};

}  // namespace srgk
