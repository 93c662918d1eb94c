#pragma once
/// @file riemann_exact.hpp
/// @brief Exact solution of the one-dimensional Riemann problem for the
/// Synge gas.
///
/// Shocks follow the Taub adiabat, solved for zeta behind the shock.
/// Rarefactions follow the isentrope
///
///     ln p = const + ln(K_2(zeta) e^zeta) + zeta (G - 1) - 2 ln zeta,
///
/// along which the Riemann invariant is the rapidity plus or minus
/// phi(zeta) = int G' / (G c_s) dzeta. phi converges as zeta grows, so
/// vacuum formation can be detected exactly.

#include "srgk/bessel.hpp"
#include "srgk/core.hpp"
#include "srgk/eos.hpp"
#include "srgk/quadrature.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace srgk {

enum class WaveKind { shock, rarefaction };

namespace riemann_detail {

inline constexpr double kQuadTol = 1e-13;

/// ln p along an isentrope, up to an additive constant.
inline double isentrope_log_p(double zeta) {
    const EosEval q = eos_eval(zeta);
    return std::log(bessel::scaled_kn(2, zeta)) + zeta * q.Gm1 - 2.0 * std::log(zeta);
}

/// -G' / (G c_s): positive, and the integrand of the rarefaction invariant in zeta.
inline double invariant_density(double zeta) {
    const EosEval q = eos_eval(zeta);
    return -q.Gprime / (q.G * q.cs);
}

/// int_{za}^{zb} -G'/(G c_s) dzeta, integrated in ln zeta.
inline double invariant_between(double za, double zb) {
    if (za == zb) return 0.0;
    auto f = [](double s) {
        const double z = std::exp(s);
        return std::array<double, 1>{invariant_density(z) * z};
    };
    return quad::integrate<1>(f, std::log(za), std::log(zb), kQuadTol, 1e-16, 512).value[0];
}

/// int_{za}^{inf} -G'/(G c_s) dzeta with zeta = za / u^2, which removes the zeta^{-3/2} tail.
inline double invariant_to_infinity(double za) {
    auto f = [za](double u) {
        if (u <= 0.0) return std::array<double, 1>{0.0};
        const double z = za / (u * u);
        return std::array<double, 1>{invariant_density(z) * 2.0 * za / (u * u * u)};
    };
    return quad::integrate<1>(f, 0.0, 1.0, kQuadTol, 1e-16, 512).value[0];
}

/// Root of f on [lo, hi] (f(lo), f(hi) of opposite signs) to full precision.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, const char* what) {
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    if (iters >= 200) throw ConvergenceFailure(std::string("riemann: ") + what + " did not converge");
    return 0.5 * (r.first + r.second);
}

/// zeta on the isentrope through (zeta_a, p_a) at pressure p.
inline double isentrope_zeta(double zeta_a, double p_a, double p) {
    if (p == p_a) return zeta_a;
    const double target = isentrope_log_p(zeta_a) + std::log(p / p_a);
    auto f = [&](double s) { return isentrope_log_p(std::exp(s)) - target; };
    // ln p falls with slope between 4 and 2.5 in ln zeta
    const double s0 = std::log(zeta_a), dl = std::log(p_a / p);
    double lo = s0 + dl / 4.0, hi = s0 + dl / 2.5;
    if (lo > hi) std::swap(lo, hi);
    lo -= 1e-3;
    hi += 1e-3;
    return std::exp(solve_bracketed(f, lo, hi, "isentrope"));
}

}  // namespace riemann_detail

enum class Family { minus, plus };

/// State behind a wave of the given family, connected to the state ahead of it.
struct WaveCurvePoint {
    double zeta = 0.0, rho = 0.0, p = 0.0, u = 0.0;
    WaveKind kind = WaveKind::rarefaction;
    Family family = Family::minus;
    double shock_speed = 0.0;  ///< shocks only

    Primitive<1> primitive() const { return {rho, {u}, p}; }
};

namespace riemann_detail {
inline int family_sign(Family f) { return f == Family::minus ? -1 : 1; }
}  // namespace riemann_detail

/// Shock of the given family from `pre` to pressure p_post > pre.p.
inline WaveCurvePoint shock_branch(const Primitive<1>& pre, double p_post, Family family) {
    if (!(p_post > pre.p)) throw DomainError("shock_branch: post pressure must exceed the pre-shock pressure");
    const int sign = riemann_detail::family_sign(family);
    const double za = pre.rho / pre.p, ua = pre.u[0];
    const double ha = eos_eval(za).G;
    const double dp = p_post - pre.p;
    WaveCurvePoint w;
    w.kind = WaveKind::shock;
    w.family = family;
    if (dp <= 1e-13 * pre.p) {
        // below roundoff the jump conditions are 0/0; the shock is a sound wave
        w.zeta = za;
        w.p = p_post;
        w.rho = pre.rho;
        w.u = ua;
        const double cs = eos_eval(za).cs;
        w.shock_speed = (ua + sign * cs) / (1.0 + sign * ua * cs);
        return w;
    }
    // Taub adiabat: G_b^2 - G_a^2 = (G_b/rho_b + G_a/rho_a)(p_b - p_a), rho_b = zeta_b p_b
    auto taub = [&](double s) {
        const double z = std::exp(s);
        const double h = eos_eval(z).G;
        return (h - ha) * (h + ha) - (ha / pre.rho + h / (z * p_post)) * dp;
    };
    // negative at zeta_a, positive in the hot limit
    const double s0 = std::log(za);
    double lo = s0 - 0.5;
    for (int k = 0; taub(lo) <= 0.0; ++k) {
        if (k > 200) throw BracketFailure("riemann: Taub adiabat not bracketed");
        lo -= 1.0;
    }
    w.zeta = std::exp(riemann_detail::solve_bracketed(taub, lo, s0, "Taub adiabat"));
    w.p = p_post;
    w.rho = w.zeta * p_post;
    const double ea = pre.rho * (ha - 1.0 / za), eb = w.rho * (eos_eval(w.zeta).G - 1.0 / w.zeta);
    const double rel = std::sqrt(std::max(0.0, dp * (eb - ea)) / ((ea + p_post) * (eb + pre.p)));
    w.u = (ua + sign * rel) / (1.0 + sign * ua * rel);
    // mass jump: s [rho W] = [rho W u]
    const double Da = pre.rho / std::sqrt(1.0 - ua * ua), Db = w.rho / std::sqrt(1.0 - w.u * w.u);
    w.shock_speed = (Db * w.u - Da * ua) / (Db - Da);
    return w;
}

/// Rarefaction of the given family from `pre` to pressure p_post <= pre.p.
inline WaveCurvePoint rarefaction_branch(const Primitive<1>& pre, double p_post, Family family) {
    if (!(p_post > 0.0) || p_post > pre.p)
        throw DomainError("rarefaction_branch: post pressure must lie in (0, p_pre]");
    const double za = pre.rho / pre.p;
    WaveCurvePoint w;
    w.kind = WaveKind::rarefaction;
    w.family = family;
    w.zeta = riemann_detail::isentrope_zeta(za, pre.p, p_post);
    w.p = p_post;
    w.rho = w.zeta * p_post;
    const double dphi = riemann_detail::invariant_between(za, w.zeta);
    w.u = std::tanh(std::atanh(pre.u[0]) - riemann_detail::family_sign(family) * dphi);
    return w;
}

inline WaveCurvePoint wave_curve(const Primitive<1>& pre, double p_post, Family family) {
    return p_post > pre.p ? shock_branch(pre, p_post, family) : rarefaction_branch(pre, p_post, family);
}

/// Self-similar solution of a Riemann problem. Speeds are in xi = (x - x0) / t;
/// for a shock head and tail coincide with the shock speed.
struct RiemannFan {
    Primitive<1> left_state, right_state;
    WaveCurvePoint left_wave, right_wave;
    double p_star = 0.0, u_star = 0.0, rho_star_L = 0.0, rho_star_R = 0.0;
    double left_head = 0.0, left_tail = 0.0, right_head = 0.0, right_tail = 0.0;

    /// State at xi = x / t.
    Primitive<1> sample(double xi) const;

    /// Sample at positions x at time t, with the initial jump at x0.
    std::vector<Primitive<1>> sample(const std::vector<double>& x, double t, double x0) const {
        std::vector<Primitive<1>> out;
        out.reserve(x.size());
        for (double xi : x) out.push_back(t > 0.0 ? sample((xi - x0) / t) : (xi < x0 ? left_state : right_state));
        return out;
    }
};

namespace riemann_detail {

inline double char_speed(const Primitive<1>& s, int sign) {
    const double v = s.u[0], cs = eos_eval(s.rho / s.p).cs;
    return (v + sign * cs) / (1.0 + sign * v * cs);
}

/// Point inside a rarefaction fan of `pre` where lambda_-/+ = xi.
inline Primitive<1> fan_state(const Primitive<1>& pre, double zeta_post, int sign, double xi) {
    const double za = pre.rho / pre.p, ra = std::atanh(pre.u[0]);
    auto u_at = [&](double z) { return std::tanh(ra - sign * invariant_between(za, z)); };
    auto f = [&](double s) {
        const double z = std::exp(s);
        return std::atanh(u_at(z)) + sign * std::atanh(eos_eval(z).cs) - std::atanh(xi);
    };
    const double z = std::exp(solve_bracketed(f, std::log(za), std::log(zeta_post), "rarefaction fan"));
    const double p = pre.p * std::exp(isentrope_log_p(z) - isentrope_log_p(za));
    return {z * p, {u_at(z)}, p};
}

inline Primitive<1> sample_side(const Primitive<1>& pre, const WaveCurvePoint& w, double head, double tail,
                                double xi) {
    const int sign = family_sign(w.family);
    // sign * xi grows from the contact outward; a shock has head == tail
    if (sign * xi >= sign * head) return pre;
    if (sign * xi <= sign * tail) return w.primitive();
    return fan_state(pre, w.zeta, sign, xi);
}

}  // namespace riemann_detail

inline Primitive<1> RiemannFan::sample(double xi) const {
    if (xi < u_star) return riemann_detail::sample_side(left_state, left_wave, left_head, left_tail, xi);
    return riemann_detail::sample_side(right_state, right_wave, right_head, right_tail, xi);
}

/// Velocity reached by each rarefaction when expanded to zero pressure.
inline std::pair<double, double> vacuum_velocities(const Primitive<1>& L, const Primitive<1>& R) {
    const double vl = std::tanh(std::atanh(L.u[0]) + riemann_detail::invariant_to_infinity(L.rho / L.p));
    const double vr = std::tanh(std::atanh(R.u[0]) - riemann_detail::invariant_to_infinity(R.rho / R.p));
    return {vl, vr};
}

inline RiemannFan solve_star(const Primitive<1>& L, const Primitive<1>& R) {
    if (!admissible(L) || !admissible(R)) throw NonPhysicalState("riemann: inadmissible initial state");
    const auto [vl, vr] = vacuum_velocities(L, R);
    if (vl <= vr) throw VacuumFormation("riemann: the initial data generate vacuum");

    RiemannFan fan;
    fan.left_state = L;
    fan.right_state = R;
    auto f = [&](double s) {
        const double p = std::exp(s);
        return wave_curve(L, p, Family::minus).u - wave_curve(R, p, Family::plus).u;
    };
    // f decreases in p; grow the bracket geometrically outward from the side pressures
    double lo = std::log(std::min(L.p, R.p)) - 0.1, hi = std::log(std::max(L.p, R.p)) + 0.1;
    for (int k = 0; f(lo) < 0.0; ++k) {
        if (k > 100) throw BracketFailure("riemann: star pressure not bracketed below");
        lo -= 2.0;
    }
    for (int k = 0; f(hi) > 0.0; ++k) {
        if (k > 100) throw BracketFailure("riemann: star pressure not bracketed above");
        hi += 2.0;
    }
    fan.p_star = std::exp(riemann_detail::solve_bracketed(f, lo, hi, "star pressure"));
    fan.left_wave = wave_curve(L, fan.p_star, Family::minus);
    fan.right_wave = wave_curve(R, fan.p_star, Family::plus);
    fan.u_star = 0.5 * (fan.left_wave.u + fan.right_wave.u);
    fan.rho_star_L = fan.left_wave.rho;
    fan.rho_star_R = fan.right_wave.rho;
    auto speeds = [](const Primitive<1>& pre, const WaveCurvePoint& w, double& head, double& tail) {
        const int sign = riemann_detail::family_sign(w.family);
        if (w.kind == WaveKind::shock) {
            head = tail = w.shock_speed;
        } else {
            head = riemann_detail::char_speed(pre, sign);
            tail = riemann_detail::char_speed(w.primitive(), sign);
        }
    };
    speeds(L, fan.left_wave, fan.left_head, fan.left_tail);
    speeds(R, fan.right_wave, fan.right_head, fan.right_tail);
    return fan;
}

}  // namespace srgk
