#pragma once
/// @file halfplane.hpp
/// @brief Moments of a Juettner distribution over the half spaces p^1 > 0 and p^1 < 0.
///
/// Momenta are written in the rest frame of the distribution through the
/// rest-frame energy E, with r = sqrt(E^2 - 1). The split surface p^1 = 0
/// meets the rest-frame shell at E_c = sqrt(1 + (U^1)^2); every E integral is
/// split there so that each panel has a smooth integrand.
///
/// One dimension: p^0 = U^0 E + U^1 r eta, p^1 = U^1 E + U^0 r eta, and the
/// azimuth is integrated out. The inner eta integral uses Gauss-Legendre nodes: exact for
/// the polynomial weights, and sized from the pole distance for 1 / (V_a p^a).
///
/// Two dimensions: the azimuth is rotated so that p^1 depends on sin(phi)
/// only. Monomials of degree <= 2 in p reduce to the angular integrals
/// I_{j,k}(h) of Q_k, which are known in closed form.

#include "srgk/bessel.hpp"
#include "srgk/eos.hpp"
#include "srgk/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace srgk {

enum class HalfSpace { full, plus, minus };

inline constexpr double kHalfplaneTol = 1e-10;

namespace detail {

/// Upper limit of rest-frame energy used before the tail check.
inline double energy_cutoff(double zeta, double unorm2) {
    return 1.0 + (45.0 + 10.0 * std::log1p(unorm2)) / zeta;
}

/// Adaptive integral of f over [a, b] followed by a geometric tail extension.
/// `decay(x)` is the e-folding length of the integrand in the integration
/// variable at x; segments are appended while the tail estimate is not negligible.
template <std::size_t K, class F, class Decay>
std::array<double, K> integrate_with_tail(F&& f, double a, double b, Decay&& decay, double tol) {
    std::array<double, K> total = quad::integrate<K>(f, a, b, tol, 0.0, 256, 1e-4).value;
    for (int ext = 0; ext < 6; ++ext) {
        double big = 0.0;
        for (double v : total) big = std::max(big, std::abs(v));
        const std::array<double, K> fend = f(b);
        const double len = decay(b);
        double tail = 0.0;
        for (double v : fend) tail = std::max(tail, std::abs(v) * len);
        if (!(tail > 1e-16 * big)) break;
        const double nb = b + std::max(b - a, 10.0 * len);
        const auto more = quad::integrate<K>(f, b, nb, tol, 1e-16 * big, 256, 1e-4).value;
        for (std::size_t k = 0; k < K; ++k) total[k] += more[k];
        a = b;
        b = nb;
    }
    return total;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// One dimension: general monomial moments with optional weights

/// Weight multiplying the distribution in a one-dimensional moment.
///  - unit:  1
///  - own:   1 / (U_a p^a), the inverse rest-frame energy of the distribution itself
///  - frame: 1 / (V_a p^a) for a unit timelike V = (v0, v1), e.g. (1, 0) gives 1 / p^0
struct MomentWeight {
    enum class Kind { unit, own, frame };
    Kind kind = Kind::unit;
    double v0 = 1.0, v1 = 0.0;

    static MomentWeight unit() { return {}; }
    static MomentWeight own() { return {Kind::own, 1.0, 0.0}; }
    static MomentWeight inverse_lab_energy() { return {Kind::frame, 1.0, 0.0}; }
    static MomentWeight frame(double v0, double v1) { return {Kind::frame, v0, v1}; }
};

/// Table m(i, j) = < (p^0)^i (p^1)^j w g > over a half space, i + j <= Deg.
template <int Deg>
struct MonomialTable {
    static constexpr int n = Deg + 1;
    std::array<double, static_cast<std::size_t>(n * n)> m{};
    double operator()(int i, int j) const { return m[static_cast<std::size_t>(i * n + j)]; }
    double& operator()(int i, int j) { return m[static_cast<std::size_t>(i * n + j)]; }
};

namespace detail {

/// Gauss-Legendre rule with at least n nodes from a fixed ladder of sizes.
inline const quad::GaussRule& gauss_rule_at_least(int n) {
    static const std::array<int, 12> sizes = {3, 4, 8, 16, 24, 32, 48, 64, 96, 128, 192, 256};
    static const std::array<quad::GaussRule, 12> rules = [] {
        std::array<quad::GaussRule, 12> r;
        for (std::size_t i = 0; i < sizes.size(); ++i) r[i] = quad::gauss_legendre(sizes[i]);
        return r;
    }();
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (sizes[i] >= n) return rules[i];
    return rules.back();
}

/// Nodes needed on [lo, hi] for a polynomial of degree deg over (alpha + beta eta),
/// from the Bernstein ellipse through the pole.
inline int rational_rule_size(double alpha, double beta, double lo, double hi, int deg) {
    if (beta == 0.0) return deg / 2 + 1;
    const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
    const double t = std::abs((-alpha / beta - c) / h);
    const double rho = t + std::sqrt(std::max(t * t - 1.0, 0.0));
    if (!(rho > 1.0)) return 1 << 30;
    return static_cast<int>(std::ceil(18.5 / std::log(rho))) + deg / 2 + 1;
}

}  // namespace detail

/// Half-space moments of a one-dimensional equilibrium with monomial integrands.
template <int Deg>
MonomialTable<Deg> monomial_moments_1d(const EquilibriumSpec<1>& s, HalfSpace side,
                                       MomentWeight w = MomentWeight::unit(), double tol = kHalfplaneTol) {
    constexpr int n = Deg + 1;
    constexpr std::size_t K = static_cast<std::size_t>(n * n);
    const double u0 = s.U[0], u1 = s.U[1], zeta = s.zeta;
    const double k2 = bessel::scaled_kn(2, zeta);
    const double norm = s.rho * zeta / (2.0 * k2);

    auto node = [&](double sv) {
        std::array<double, K> out{};
        const double E = std::cosh(sv), r = std::sinh(sv);
        double lo = -1.0, hi = 1.0;
        if (side != HalfSpace::full) {
            const double ec = r > 0.0 ? -u1 * E / (u0 * r) : (u1 > 0.0 ? -2.0 : (u1 < 0.0 ? 2.0 : 0.0));
            if (side == HalfSpace::plus) lo = std::clamp(ec, -1.0, 1.0);
            else hi = std::clamp(ec, -1.0, 1.0);
        }
        if (!(hi > lo)) return out;
        const double base = norm * std::exp(-zeta * (E - 1.0)) * r * r;
        const double a0 = u0 * E, b0 = u1 * r, a1 = u1 * E, b1 = u0 * r;

        const bool rational = w.kind == MomentWeight::Kind::frame;
        const double alpha = w.v0 * a0 - w.v1 * a1, beta = w.v0 * b0 - w.v1 * b1;
        const auto& rule = detail::gauss_rule_at_least(
            rational ? detail::rational_rule_size(alpha, beta, lo, hi, Deg) : Deg / 2 + 1);
        const double c = 0.5 * (hi + lo), hw = 0.5 * (hi - lo);
        const double own = w.kind == MomentWeight::Kind::own ? 1.0 / E : 1.0;
        for (std::size_t q = 0; q < rule.x.size(); ++q) {
            const double eta = c + hw * rule.x[q];
            const double p0 = a0 + b0 * eta, p1 = a1 + b1 * eta;
            double wq = base * hw * rule.w[q] * own;
            if (rational) wq /= alpha + beta * eta;
            double pi0 = wq;
            for (int i = 0; i <= Deg; ++i) {
                double pij = pi0;
                for (int j = 0; i + j <= Deg; ++j) {
                    out[static_cast<std::size_t>(i * n + j)] += pij;
                    pij *= p1;
                }
                pi0 *= p0;
            }
        }
        return out;
    };

    const double emax = detail::energy_cutoff(zeta, u1 * u1);
    const double smax = std::acosh(emax);
    const double sc = std::asinh(std::abs(u1));
    auto decay = [&](double sv) { return 1.0 / (zeta * std::max(std::sinh(sv), 1e-300)); };

    MonomialTable<Deg> t;
    if (side == HalfSpace::full || u1 == 0.0 || sc >= smax) {
        t.m = detail::integrate_with_tail<K>(node, 0.0, smax, decay, tol);
        return t;
    }
    const auto low = quad::integrate<K>(node, 0.0, sc, tol, 0.0, 256, 1e-4).value;
    const auto high = detail::integrate_with_tail<K>(node, sc, smax, decay, tol);
    for (std::size_t k = 0; k < K; ++k) t.m[k] = low[k] + high[k];
    return t;
}

// ---------------------------------------------------------------------------
// Two dimensions: angular integrals

/// I_{j,k}(h) for k = 1..6 (stored at index k-1), region j = 0..3.
///  j = 0: the full sphere; j = 1: the polar caps sqrt(1 - eta^2) <= |h| (one cap);
///  j = 2: |eta| < sqrt(1 - h^2) with sin(phi) > -h / sqrt(1 - eta^2);
///  j = 3: |eta| < sqrt(1 - h^2) with sin(phi) < -h / sqrt(1 - eta^2).
inline std::array<double, 6> angular_integrals(int j, double h) {
    constexpr double pi = std::numbers::pi;
    std::array<double, 6> I{};
    if (j == 0) {
        I[0] = 4.0 * pi;
        I[5] = 8.0 * pi / 3.0;
        return I;
    }
    if (!(std::abs(h) <= 1.0)) throw DomainError("angular_integrals: |h| must not exceed 1");
    const double c = std::sqrt((1.0 - h) * (1.0 + h));
    const double sg = h >= 0.0 ? 1.0 : -1.0;
    switch (j) {
        case 1:
            I[0] = 2.0 * pi * (1.0 - c);
            I[5] = (2.0 * pi / 3.0) * (1.0 - c) * (1.0 - c) * (2.0 + c);
            break;
        case 2:
            I[0] = 2.0 * pi * c * (1.0 + sg) - 2.0 * pi * sg + 2.0 * pi * h;
            I[2] = pi * c * c;
            I[3] = h * pi * c * c;
            I[5] = (2.0 * pi / 3.0) * c * (h * h + 2.0) * (1.0 + sg) + (pi / 3.0) * (h * h * h - 4.0 * sg) + pi * h;
            break;
        case 3:
            I[0] = 2.0 * pi * c * (1.0 - sg) + 2.0 * pi * sg - 2.0 * pi * h;
            I[2] = -pi * c * c;
            I[3] = -h * pi * c * c;
            I[5] = (2.0 * pi / 3.0) * c * (h * h + 2.0) * (1.0 - sg) - (pi / 3.0) * (h * h * h - 4.0 * sg) - pi * h;
            break;
        default: throw DomainError("angular_integrals: region index must be 0..3");
    }
    return I;
}

// ---------------------------------------------------------------------------
// Half-space N and T in either dimension

/// Scalar, first and second moments over a half space.
template <int Dim>
struct HalfMoments {
    double scalar = 0.0;                           ///< <1>
    Eigen::Matrix<double, Dim + 1, 1> N;           ///< <p^a>
    Eigen::Matrix<double, Dim + 1, Dim + 1> T;     ///< <p^a p^b>

    HalfMoments() {
        N.setZero();
        T.setZero();
    }
    HalfMoments& operator+=(const HalfMoments& o) {
        scalar += o.scalar;
        N += o.N;
        T += o.T;
        return *this;
    }
    /// <p^axis Psi> in conserved ordering; axis 1 gives the kinetic flux.
    StateVec<Dim> flux(int axis = 1) const {
        StateVec<Dim> f;
        f(0) = N(axis);
        for (int i = 1; i <= Dim; ++i) f(i) = T(axis, i);
        f(Dim + 1) = T(axis, 0);
        return f;
    }
    /// <p^0 Psi>, the conserved variables carried by these particles.
    StateVec<Dim> conserved() const { return flux(0); }
};

namespace detail {

inline constexpr std::size_t kBasis = 7;
using Basis = std::array<double, kBasis>;

/// Assemble N and T from the basis integrals
/// [I1, E I1, r I3, E^2 I1, E r I3, r^2 I6, r^2 I4] and the rotated tetrad
/// p = U E + r sqrt(1-eta^2) (S sin(phi) + C cos(phi)) + r eta e_3.
template <int Dim>
HalfMoments<Dim> assemble(const EquilibriumSpec<Dim>& s, const Basis& J, double scale) {
    const double u0 = s.U[0], u1 = s.U[1], u2 = Dim == 2 ? s.U[Dim] : 0.0;
    const double ec = std::sqrt(1.0 + u1 * u1);
    const double U[3] = {u0, u1, u2};
    const double S[3] = {u0 * u1 / ec, ec, u1 * u2 / ec};
    const double C[3] = {-u2 / ec, 0.0, -u0 / ec};
    const double sym = 0.5 * (J[5] - J[6]) * scale, cc = 0.5 * (J[5] + J[6]) * scale;
    HalfMoments<Dim> m;
    m.scalar = J[0] * scale;
    for (int a = 0; a <= Dim; ++a) {
        m.N(a) = (U[a] * J[1] + S[a] * J[2]) * scale;
        for (int b = 0; b <= Dim; ++b) {
            m.T(a, b) = U[a] * U[b] * J[3] * scale + (U[a] * S[b] + U[b] * S[a]) * J[4] * scale +
                        S[a] * S[b] * sym + C[a] * C[b] * cc;
        }
    }
    return m;
}

/// Reference path: the basis integrals by adaptive quadrature of the angular
/// integrals over the three energy ranges.
inline Basis basis_by_quadrature(double u1, double zeta, HalfSpace side, double unorm2, double tol) {
    const double ec = std::sqrt(1.0 + u1 * u1);
    const bool upos = u1 >= 0.0;
    constexpr std::size_t K = kBasis;

    auto fill = [](Basis& out, double wgt, double E, double r, const std::array<double, 6>& I) {
        out[0] = wgt * I[0];
        out[1] = wgt * E * I[0];
        out[2] = wgt * r * I[2];
        out[3] = wgt * E * E * I[0];
        out[4] = wgt * E * r * I[2];
        out[5] = wgt * r * r * I[5];
        out[6] = wgt * r * r * I[3];
    };
    // Whole rest-frame shells (E <= E_c, or everything for the full space), E = cosh(s).
    auto shell_node = [&](double sv) {
        Basis out{};
        const double E = std::cosh(sv), r = std::sinh(sv);
        fill(out, std::exp(-zeta * (E - 1.0)) * r * r, E, r, angular_integrals(0, 0.0));
        return out;
    };
    // Split shells above E_c, E = E_c cosh(t) so that sqrt(1 - h^2) = sinh(t) / r.
    auto split_node = [&](double tv) {
        Basis out{};
        const double ch = std::cosh(tv), sh = std::sinh(tv);
        const double E = ec * ch;
        const double r = std::sqrt((E - 1.0) * (E + 1.0));
        if (!(r > 0.0)) return out;
        const double h = std::clamp(u1 * ch / r, -1.0, 1.0);
        const bool owner = (side == HalfSpace::plus) == upos;  // side that holds the polar caps
        std::array<double, 6> I = angular_integrals(side == HalfSpace::plus ? 2 : 3, h);
        if (owner) {
            const auto cap = angular_integrals(1, h);
            for (int k = 0; k < 6; ++k) I[k] += 2.0 * cap[k];
        }
        fill(out, std::exp(-zeta * (E - 1.0)) * r * ec * sh, E, r, I);
        return out;
    };

    const double emax = energy_cutoff(zeta, unorm2);
    Basis J{};
    auto add = [&J](const Basis& v) {
        for (std::size_t k = 0; k < K; ++k) J[k] += v[k];
    };
    auto shell_decay = [&](double sv) { return 1.0 / (zeta * std::max(std::sinh(sv), 1e-300)); };
    auto split_decay = [&](double tv) { return 1.0 / (zeta * ec * std::max(std::sinh(tv), 1e-300)); };

    if (side == HalfSpace::full) {
        add(integrate_with_tail<K>(shell_node, 0.0, std::acosh(emax), shell_decay, tol));
    } else {
        const bool owner = (side == HalfSpace::plus) == upos;
        const double sc = std::asinh(std::abs(u1));
        if (emax <= ec) {
            if (owner) add(integrate_with_tail<K>(shell_node, 0.0, std::acosh(emax), shell_decay, tol));
        } else {
            if (owner && sc > 0.0) add(quad::integrate<K>(shell_node, 0.0, sc, tol, 0.0, 256, 1e-4).value);
            add(integrate_with_tail<K>(split_node, 0.0, std::acosh(emax / ec), split_decay, tol));
        }
    }
    return J;
}

/// Range of (zeta, |U^1|) where the fixed 48-point rule below was validated
/// against the adaptive path to better than 1e-12.
inline constexpr double kFastZetaMin = 1e-4, kFastZetaMax = 1e5, kFastU1Max = 1e3;

/// Shell integrals above E_c = cosh(s_c), scaled by exp(zeta (E_c - 1)):
///   int_{s_c}^inf exp(-zeta (cosh s - E_c)) sinh^2 s {1, cosh s, cosh^2 s, sinh^2 s} ds.
/// The integrand is entire in s; t = s - s_c keeps the exponent free of cancellation.
inline std::array<double, 4> shell_tail(double zeta, double u1abs, bool fixed_rule, double tol) {
    const double ec = std::sqrt(1.0 + u1abs * u1abs);
    const double tmax = std::acosh(ec + (fixed_rule ? 40.0 : 80.0) / zeta) - std::asinh(u1abs);
    auto node = [zeta, ec, u1abs](double t) {
        // cosh and sinh of t and of s = s_c + t from one expm1, free of cancellation
        const double em = std::expm1(t);
        const double sh = 0.5 * (em + em / (1.0 + em));
        const double chm1 = 0.5 * em * em / (1.0 + em);
        const double E = ec * (1.0 + chm1) + u1abs * sh;
        const double r = u1abs * (1.0 + chm1) + ec * sh;
        const double w = std::exp(-zeta * (ec * chm1 + u1abs * sh)) * r * r;
        return std::array<double, 4>{w, w * E, w * E * E, w * r * r};
    };
    if (!fixed_rule) return quad::integrate<4>(node, 0.0, tmax, tol, 0.0, 512, 1e-4).value;
    static const quad::GaussRule rule = quad::gauss_legendre(48);
    const double c = 0.5 * tmax;
    std::array<double, 4> out{};
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
        const auto v = node(c + c * rule.x[q]);
        for (std::size_t k = 0; k < 4; ++k) out[k] += rule.w[q] * v[k];
    }
    for (double& v : out) v *= c;
    return out;
}

/// Basis integrals through the closed-form reduction. Above E_c the combined
/// angular integrals are polynomials in h = v E / r with v = U^1 / E_c:
///   plus:  I1 = 2 pi (1 + h), I3 = pi (1 - h^2), I4 = h I3, I6 = pi (4 + 3h + h^3) / 3,
/// and the minus side flips the sign of h and of I3, I4. What remains are
/// elementary exponential integrals and four incomplete shell integrals.
/// The side holding the polar caps is the complement of the other one.
inline Basis basis_reduced(double u1, double zeta, HalfSpace side, double tol) {
    constexpr double pi = std::numbers::pi;
    const auto k = bessel::scaled_k_table<3>(zeta);
    // Complete integrals int_1^inf exp(-zeta (E - 1)) r E^m dE and of r^3.
    const double c0 = k[1] / zeta, c1 = k[2] / zeta, cr3 = 3.0 * k[2] / (zeta * zeta), c2 = c0 + cr3;
    Basis full{};
    full[0] = 4.0 * pi * c0;
    full[1] = 4.0 * pi * c1;
    full[3] = 4.0 * pi * c2;
    full[5] = (8.0 * pi / 3.0) * cr3;
    if (side == HalfSpace::full) return full;

    const double ec = std::sqrt(1.0 + u1 * u1);
    const double damp = std::exp(-zeta * u1 * u1 / (ec + 1.0));  // exp(-zeta (E_c - 1))
    const bool fast = zeta >= kFastZetaMin && zeta <= kFastZetaMax && std::abs(u1) <= kFastU1Max && tol >= 1e-12;
    auto F = shell_tail(zeta, std::abs(u1), fast, std::min(tol, 1e-12));
    for (double& v : F) v *= damp;
    // P_j = int_{E_c}^inf exp(-zeta (E - 1)) E^j dE
    std::array<double, 4> P{};
    P[0] = damp / zeta;
    double ej = 1.0;
    for (int j = 1; j < 4; ++j) {
        ej *= ec;
        P[static_cast<std::size_t>(j)] = (ej * damp + j * P[static_cast<std::size_t>(j - 1)]) / zeta;
    }

    const bool plus = side == HalfSpace::plus;
    const bool owner = plus == (u1 >= 0.0);
    // sign of h for the side integrated directly (the other one when this side owns the caps)
    const double sigma = (plus != owner) ? 1.0 : -1.0;
    const double v = u1 / ec, v2 = v * v, v3 = v2 * v;
    Basis up{};
    up[0] = 2.0 * pi * (F[0] + sigma * v * P[1]);
    up[1] = 2.0 * pi * (F[1] + sigma * v * P[2]);
    up[2] = sigma * pi * ((1.0 - v2) * P[2] - P[0]);
    up[3] = 2.0 * pi * (F[2] + sigma * v * P[3]);
    up[4] = sigma * pi * ((1.0 - v2) * P[3] - P[1]);
    up[5] = (pi / 3.0) * (4.0 * F[3] + sigma * (3.0 * v * (P[3] - P[1]) + v3 * P[3]));
    up[6] = sigma * pi * (v * (P[3] - P[1]) - v3 * P[3]);
    if (!owner) return up;
    for (std::size_t i = 0; i < kBasis; ++i) full[i] -= up[i];
    return full;
}

}  // namespace detail

/// Half-space moments <1>, <p^a>, <p^a p^b> of an equilibrium.
template <int Dim>
HalfMoments<Dim> half_moments(const EquilibriumSpec<Dim>& s, HalfSpace side, double tol = kHalfplaneTol) {
    if (!(s.rho > 0.0) || !(s.zeta > 0.0)) throw DomainError("half_moments: invalid equilibrium");
    const double scale = s.rho * s.zeta / (4.0 * std::numbers::pi * bessel::scaled_kn(2, s.zeta));
    return detail::assemble(s, detail::basis_reduced(s.U[1], s.zeta, side, tol), scale);
}

/// Same moments through direct adaptive quadrature of the angular integrals.
/// Slower; kept as an independent check of the reduced path.
template <int Dim>
HalfMoments<Dim> half_moments_quadrature(const EquilibriumSpec<Dim>& s, HalfSpace side,
                                         double tol = kHalfplaneTol) {
    if (!(s.rho > 0.0) || !(s.zeta > 0.0)) throw DomainError("half_moments: invalid equilibrium");
    const double scale = s.rho * s.zeta / (4.0 * std::numbers::pi * bessel::scaled_kn(2, s.zeta));
    return detail::assemble(s, detail::basis_by_quadrature(s.U[1], s.zeta, side, s.spatial_norm2(), tol), scale);
}

}  // namespace srgk
