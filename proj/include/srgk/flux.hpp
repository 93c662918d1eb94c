#pragma once
/// @file flux.hpp
/// @brief Interface fluxes in the x direction: simplified BGK, full BGK (1D),
/// kinetic flux vector splitting and local Lax-Friedrichs.
///
/// Every flux here is the time average over one step of <p^1 Psi f> at the
/// interface. The y direction is handled by the solver through swap_axes().

#include "srgk/eos.hpp"
#include "srgk/halfplane.hpp"
#include "srgk/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace srgk {

enum class FluxKind { sbgk, bgk1d, kfvs, llf };

inline std::string to_string(FluxKind k) {
    switch (k) {
        case FluxKind::sbgk: return "sbgk";
        case FluxKind::bgk1d: return "bgk1d";
        case FluxKind::kfvs: return "kfvs";
        case FluxKind::llf: return "llf";
    }
    return "?";
}

inline FluxKind flux_kind_from_string(const std::string& s) {
    if (s == "sbgk") return FluxKind::sbgk;
    if (s == "bgk1d" || s == "bgk") return FluxKind::bgk1d;
    if (s == "kfvs") return FluxKind::kfvs;
    if (s == "llf") return FluxKind::llf;
    throw DomainError("unknown flux kind '" + s + "'");
}

/// tau = C1 dt^alpha1 + C2 dt^alpha2 |pL - pR| / (pL + pR)
struct CollisionTimeParams {
    double C1 = 1.0, C2 = 1.0, alpha1 = 2.0, alpha2 = 1.0;
};

inline double collision_time(double pL, double pR, double dt, const CollisionTimeParams& c = {}) {
    if (!(pL > 0.0) || !(pR > 0.0)) throw DomainError("collision_time: pressures must be positive");
    if (!(dt > 0.0)) throw DomainError("collision_time: dt must be positive");
    return c.C1 * std::pow(dt, c.alpha1) + c.C2 * std::pow(dt, c.alpha2) * std::abs(pL - pR) / (pL + pR);
}

/// Data at one interface. Slopes are x derivatives of the conserved variables:
/// WxL, WxR inside the two cells, Wx0 and Wy0 for the interface equilibrium.
template <int Dim>
struct InterfaceData {
    Primitive<Dim> VL, VR;
    StateVec<Dim> WxL = StateVec<Dim>::Zero();
    StateVec<Dim> WxR = StateVec<Dim>::Zero();
    StateVec<Dim> Wx0 = StateVec<Dim>::Zero();
    StateVec<Dim> Wy0 = StateVec<Dim>::Zero();
    double dt = 0.0;
    double dx_normal = 1.0;
};

/// Time averages over [0, dt] of the factors appearing in the interface distribution.
struct TimeWeights {
    double q_free = 0.0;  ///< <exp(-t/tau)>
    double q_eq = 1.0;    ///< <1 - exp(-t/tau)>
    double q_t = 0.0;     ///< <t>
    double q_te = 0.0;    ///< <t exp(-t/tau)>
};

inline TimeWeights time_weights(double dt, double tau) {
    TimeWeights w;
    w.q_t = 0.5 * dt;
    if (!(tau > 0.0)) return w;
    const double r = dt / tau;
    if (r < 1e-3) {
        w.q_free = 1.0 - r / 2.0 + r * r / 6.0 - r * r * r / 24.0;
        w.q_te = dt * (0.5 - r / 3.0 + r * r / 8.0 - r * r * r / 30.0);
    } else {
        const double em = std::exp(-r);
        w.q_free = -std::expm1(-r) / r;
        w.q_te = dt * (w.q_free - em) / r;
    }
    w.q_eq = 1.0 - w.q_free;
    return w;
}

// ---------------------------------------------------------------------------
// Axis permutation for y-direction fluxes

template <int Dim>
Primitive<Dim> swap_axes(Primitive<Dim> v) {
    if constexpr (Dim == 2) std::swap(v.u[0], v.u[1]);
    return v;
}

template <int Dim>
StateVec<Dim> swap_axes(StateVec<Dim> w) {
    if constexpr (Dim == 2) std::swap(w(1), w(2));
    return w;
}

// ---------------------------------------------------------------------------
// Simplified BGK

/// First stage of the simplified BGK flux: the interface equilibrium g0 from
/// the merged half-space moments of the two sides.
template <int Dim>
struct MergedInterface {
    EquilibriumSpec<Dim> g0;
    StateVec<Dim> w0;         ///< conserved variables of g0
    StateVec<Dim> free_flux;  ///< <p^1 Psi> over p^1 > 0 of gL plus p^1 < 0 of gR
};

template <int Dim>
MergedInterface<Dim> sbgk_merge(const Primitive<Dim>& VL, const Primitive<Dim>& VR) {
    if (!admissible(VL) || !admissible(VR)) throw NonPhysicalState("sbgk: inadmissible interface state");
    HalfMoments<Dim> m = half_moments(EquilibriumSpec<Dim>::from_primitive(VL), HalfSpace::plus);
    m += half_moments(EquilibriumSpec<Dim>::from_primitive(VR), HalfSpace::minus);
    MergedInterface<Dim> out;
    out.g0 = equilibrium_from_moments<Dim>(m.N, m.T).spec;
    out.w0 = m.conserved();
    out.free_flux = m.flux(1);
    return out;
}

/// Second stage: q_eq <p^1 Psi>_g0 + q_free (free transport) + dt/2 M1 A0.
template <int Dim>
StateVec<Dim> sbgk_finish(const MergedInterface<Dim>& m, const StateVec<Dim>& wx0, const StateVec<Dim>& wy0,
                          double dt, double tau) {
    const MomentMatrices<Dim> M = m_matrices(m.g0);
    const SlopeCoefficients<Dim> s = solve_slopes(M, wx0, wy0);
    const TimeWeights tw = time_weights(dt, tau);
    StateVec<Dim> f = tw.q_eq * M[1].col(0) + tw.q_free * m.free_flux + tw.q_t * (M[1] * s.A);
    return f;
}

template <int Dim>
StateVec<Dim> sbgk_flux(const InterfaceData<Dim>& d, const CollisionTimeParams& c = {}) {
    const MergedInterface<Dim> m = sbgk_merge(d.VL, d.VR);
    const double tau = d.dt > 0.0 ? collision_time(d.VL.p, d.VR.p, d.dt, c) : 0.0;
    return sbgk_finish(m, d.Wx0, d.Wy0, d.dt, tau);
}

// ---------------------------------------------------------------------------
// Full BGK in one dimension

namespace detail {

/// Psi = (1, p^1, p^0) as exponents (i, j) of (p^0)^i (p^1)^j.
inline constexpr int kPsi0[3] = {0, 0, 1};
inline constexpr int kPsi1[3] = {0, 1, 0};

/// result_k = < (p^0)^e0 (p^1)^e1 Psi_k (c . Psi) > from a monomial table.
template <int Deg>
StateVec<1> contract(const MonomialTable<Deg>& t, int e0, int e1, const StateVec<1>& c) {
    StateVec<1> out = StateVec<1>::Zero();
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            out(k) += c(l) * t(e0 + kPsi0[k] + kPsi0[l], e1 + kPsi1[k] + kPsi1[l]);
    return out;
}

}  // namespace detail

/// Full BGK flux: all terms of the interface distribution with the
/// exponential factor exp(-t/tau), integrated exactly in time.
inline StateVec<1> bgk1d_flux(const InterfaceData<1>& d, const CollisionTimeParams& c = {}) {
    const MergedInterface<1> m = sbgk_merge(d.VL, d.VR);
    const double tau = d.dt > 0.0 ? collision_time(d.VL.p, d.VR.p, d.dt, c) : 0.0;
    const TimeWeights tw = time_weights(d.dt, tau);
    const auto sL = EquilibriumSpec<1>::from_primitive(d.VL);
    const auto sR = EquilibriumSpec<1>::from_primitive(d.VR);

    const MomentMatrices<1> M0 = m_matrices(m.g0);
    const SlopeCoefficients<1> c0 = solve_slopes(M0, d.Wx0);
    StateVec<1> f = tw.q_eq * M0[1].col(0) + tw.q_t * (M0[1] * c0.A);

    const auto lab = MomentWeight::inverse_lab_energy();
    const auto own = MomentWeight::own();
    if (tw.q_te != 0.0) {
        const auto t = monomial_moments_1d<4>(m.g0, HalfSpace::full, lab);
        f += tw.q_te * detail::contract(t, 0, 2, c0.a);
    }
    if (tau > 0.0 && tw.q_eq != 0.0) {
        const auto t = monomial_moments_1d<4>(m.g0, HalfSpace::full, own);
        f -= tau * tw.q_eq * (detail::contract(t, 0, 2, c0.a) + detail::contract(t, 1, 1, c0.A));
    }

    auto side_terms = [&](const EquilibriumSpec<1>& s, HalfSpace side, const StateVec<1>& wx) {
        StateVec<1> r = StateVec<1>::Zero();
        if (tw.q_free == 0.0 && tw.q_te == 0.0) return r;
        const SlopeCoefficients<1> cs = solve_slopes(s, wx);
        const auto unit = monomial_moments_1d<2>(s, side);
        r += tw.q_free * StateVec<1>(unit(0, 1), unit(0, 2), unit(1, 1));
        if (tw.q_free != 0.0 && tau > 0.0) {
            const auto t = monomial_moments_1d<4>(s, side, own);
            r -= tau * tw.q_free * (detail::contract(t, 1, 1, cs.A) + detail::contract(t, 0, 2, cs.a));
        }
        if (tw.q_te != 0.0) {
            const auto t = monomial_moments_1d<4>(s, side, lab);
            r -= tw.q_te * detail::contract(t, 0, 2, cs.a);
        }
        return r;
    };
    f += side_terms(sL, HalfSpace::plus, d.WxL);
    f += side_terms(sR, HalfSpace::minus, d.WxR);
    return f;
}

// ---------------------------------------------------------------------------
// KFVS

/// Free transport of the split equilibria. In one dimension, nonzero slopes
/// and dt add the transport correction -t v_1 a g averaged over the step.
template <int Dim>
StateVec<Dim> kfvs_flux(const InterfaceData<Dim>& d) {
    if (!admissible(d.VL) || !admissible(d.VR)) throw NonPhysicalState("kfvs: inadmissible interface state");
    const auto sL = EquilibriumSpec<Dim>::from_primitive(d.VL);
    const auto sR = EquilibriumSpec<Dim>::from_primitive(d.VR);
    StateVec<Dim> f = half_moments(sL, HalfSpace::plus).flux(1) + half_moments(sR, HalfSpace::minus).flux(1);
    if constexpr (Dim == 1) {
        if (d.dt > 0.0 && (!d.WxL.isZero(0.0) || !d.WxR.isZero(0.0))) {
            const auto lab = MomentWeight::inverse_lab_energy();
            const StateVec<1> aL = solve_slopes(sL, d.WxL).a, aR = solve_slopes(sR, d.WxR).a;
            f -= 0.5 * d.dt * detail::contract(monomial_moments_1d<4>(sL, HalfSpace::plus, lab), 0, 2, aL);
            f -= 0.5 * d.dt * detail::contract(monomial_moments_1d<4>(sR, HalfSpace::minus, lab), 0, 2, aR);
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Local Lax-Friedrichs

template <int Dim>
StateVec<Dim> llf_flux(const Primitive<Dim>& VL, const Primitive<Dim>& VR) {
    if (!admissible(VL) || !admissible(VR)) throw NonPhysicalState("llf: inadmissible interface state");
    const double alpha = std::max(spectral_radius(VL, 1), spectral_radius(VR, 1));
    return 0.5 * (physical_flux(VL) + physical_flux(VR) - alpha * (to_conserved(VR) - to_conserved(VL)));
}

/// Dispatch on the flux kind (x direction).
template <int Dim>
StateVec<Dim> interface_flux(FluxKind kind, const InterfaceData<Dim>& d, const CollisionTimeParams& c = {}) {
    switch (kind) {
        case FluxKind::sbgk: return sbgk_flux(d, c);
        case FluxKind::kfvs: return kfvs_flux(d);
        case FluxKind::llf: return llf_flux(d.VL, d.VR);
        case FluxKind::bgk1d:
            if constexpr (Dim == 1) return bgk1d_flux(d, c);
            else throw DomainError("bgk1d flux is one-dimensional only");
    }
    throw DomainError("unknown flux kind");
}

}  // namespace srgk
