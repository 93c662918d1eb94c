#include "srgk/flux.hpp"
#include "oracle/kinetic_flux.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace srgk;

namespace {

Primitive<1> P1(double rho, double u, double p) { return {rho, {u}, p}; }
Primitive<2> P2(double rho, double u, double v, double p) { return {rho, {u, v}, p}; }

template <int Dim>
double rel_err(const StateVec<Dim>& a, const StateVec<Dim>& b) {
    return (a - b).norm() / std::max(1.0, b.norm());
}

oracle::Juttner to_oracle(const Primitive<1>& v) { return oracle::Juttner::from_primitive(v.rho, v.u[0], 0.0, v.p); }

TEST(CollisionTime, Examples) {
    EXPECT_DOUBLE_EQ(collision_time(1.0, 1.0, 0.01), 1e-4);
    EXPECT_NEAR(collision_time(2.0, 0.4, 0.01), 1e-4 + 0.01 * 1.6 / 2.4, 1e-16);
    CollisionTimeParams c{0.5, 2.0, 1.0, 2.0};
    EXPECT_NEAR(collision_time(3.0, 1.0, 0.1, c), 0.05 + 2.0 * 0.01 * 0.5, 1e-15);
    EXPECT_THROW(collision_time(0.0, 1.0, 0.1), DomainError);
    EXPECT_THROW(collision_time(1.0, 1.0, 0.0), DomainError);
}

TEST(TimeWeights, SeriesMatchesClosedFormAtSwitch) {
    const double dt = 0.7;
    const TimeWeights a = time_weights(dt, dt / 0.999e-3), b = time_weights(dt, dt / 1.001e-3);
    EXPECT_NEAR(a.q_free, b.q_free, 2e-6);
    EXPECT_NEAR(a.q_te, b.q_te, 2e-6);
    const TimeWeights z = time_weights(dt, 0.0);
    EXPECT_EQ(z.q_free, 0.0);
    EXPECT_EQ(z.q_te, 0.0);
    EXPECT_EQ(z.q_eq, 1.0);
    EXPECT_DOUBLE_EQ(z.q_t, 0.35);
}

TEST(TimeWeights, MatchQuadrature) {
    for (double r : {1e-5, 1e-2, 0.5, 3.0, 40.0}) {
        const double dt = 0.01, tau = dt / r;
        const TimeWeights w = time_weights(dt, tau);
        const double qf = oracle::time_average(dt, [&](double t) { return std::exp(-t / tau); }, tau);
        const double qte = oracle::time_average(dt, [&](double t) { return t * std::exp(-t / tau); }, tau);
        EXPECT_NEAR(w.q_free, qf, 1e-12) << r;
        EXPECT_NEAR(w.q_te, qte, 1e-12 * dt) << r;
    }
}

// Equal left and right states with no slopes reproduce the Euler flux.
TEST(Consistency, OneDimensional) {
    for (auto V : {P1(1.0, 0.0, 1.0), P1(2.0, 0.7, 0.3), P1(0.5, -0.9, 5.0), P1(1.0, 0.2, 1e-3)}) {
        InterfaceData<1> d{V, V};
        d.dt = 1e-3;
        const StateVec<1> F = physical_flux(V);
        for (auto k : {FluxKind::sbgk, FluxKind::bgk1d, FluxKind::kfvs, FluxKind::llf})
            EXPECT_LT(rel_err<1>(interface_flux(k, d), F), 1e-8) << to_string(k) << " rho=" << V.rho;
    }
}

TEST(Consistency, TwoDimensional) {
    for (auto V : {P2(1.0, 0.2, 0.2, 1.0), P2(2.0, -0.5, 0.6, 0.3), P2(0.5, 0.0, -0.9, 5.0)}) {
        InterfaceData<2> d{V, V};
        d.dt = 1e-3;
        const StateVec<2> F = physical_flux(V);
        for (auto k : {FluxKind::sbgk, FluxKind::kfvs, FluxKind::llf})
            EXPECT_LT(rel_err<2>(interface_flux(k, d), F), 1e-8) << to_string(k);
        EXPECT_THROW(interface_flux(FluxKind::bgk1d, d), DomainError);
    }
}

// The x flux of axis-swapped states is the swapped y flux.
TEST(Consistency, AxisSwap) {
    const auto V = P2(1.3, 0.3, -0.6, 0.8);
    InterfaceData<2> d{swap_axes(V), swap_axes(V)};
    d.dt = 1e-3;
    const StateVec<2> Fy = physical_flux(V, 2);
    for (auto k : {FluxKind::sbgk, FluxKind::kfvs, FluxKind::llf})
        EXPECT_LT(rel_err<2>(swap_axes<2>(interface_flux(k, d)), Fy), 1e-8) << to_string(k);
}

// Reflecting x -> -x swaps sides, flips u1 and the odd flux components.
TEST(Symmetry, Mirror) {
    const auto VL = P1(1.0, 0.6, 3.0), VR = P1(0.4, -0.2, 0.7);
    auto mirror = [](Primitive<1> v) {
        v.u[0] = -v.u[0];
        return v;
    };
    InterfaceData<1> a{VL, VR}, b{mirror(VR), mirror(VL)};
    a.dt = b.dt = 2e-3;
    a.WxL << 0.3, -0.1, 0.5;
    a.WxR << -0.2, 0.4, 0.1;
    a.Wx0 << 0.1, 0.2, -0.3;
    // slopes are x derivatives: D and E slopes flip, momentum slope stays
    auto mslope = [](const StateVec<1>& w) { return StateVec<1>(-w(0), w(1), -w(2)); };
    b.WxL = mslope(a.WxR);
    b.WxR = mslope(a.WxL);
    b.Wx0 = mslope(a.Wx0);
    for (auto k : {FluxKind::sbgk, FluxKind::bgk1d, FluxKind::kfvs, FluxKind::llf}) {
        const StateVec<1> fa = interface_flux(k, a), fb = interface_flux(k, b);
        EXPECT_NEAR(fa(0), -fb(0), 1e-10 * std::abs(fa(0)) + 1e-12) << to_string(k);
        EXPECT_NEAR(fa(1), fb(1), 1e-10 * std::abs(fa(1))) << to_string(k);
        EXPECT_NEAR(fa(2), -fb(2), 1e-10 * std::abs(fa(2)) + 1e-12) << to_string(k);
    }
}

TEST(Sbgk, SymmetricRarefactionHasNoMassFlux) {
    InterfaceData<1> d{P1(1.0, -0.5, 2.0), P1(1.0, 0.5, 2.0)};
    d.dt = 1e-3;
    const StateVec<1> f = sbgk_flux(d);
    EXPECT_NEAR(f(0), 0.0, 1e-13);
    EXPECT_NEAR(f(2), 0.0, 1e-13);
    EXPECT_GT(f(1), 0.0);
}

TEST(Bgk, ZeroCollisionTimeMatchesSimplified) {
    InterfaceData<1> d{P1(1.0, 0.6, 3.0), P1(1.0, -0.5, 2.0)};
    d.dt = 1e-3;
    d.WxL << 1.0, -2.0, 0.5;
    d.WxR << -0.5, 1.0, 2.0;
    d.Wx0 << 0.3, 0.4, -1.0;
    const CollisionTimeParams zero{0.0, 0.0, 2.0, 1.0};
    EXPECT_LT(rel_err<1>(bgk1d_flux(d, zero), sbgk_flux(d, zero)), 1e-13);
}

TEST(Sbgk, MatchesBruteForceOracle) {
    InterfaceData<1> d{P1(1.0, -0.5, 2.0), P1(1.0, 0.5, 2.0)};
    d.dt = 1e-3;
    d.Wx0 << 0.8, -0.3, 1.5;
    oracle::Interface in{to_oracle(d.VL), to_oracle(d.VR), d.VL.p, d.VR.p};
    in.wx0 = d.Wx0;
    in.dt = d.dt;
    const oracle::Vec3 ref = oracle::sbgk(in);
    const StateVec<1> f = sbgk_flux(d);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(f(k), ref(k), 1e-8 * std::max(1.0, std::abs(ref(k)))) << k;
}

TEST(Sbgk, MatchesBruteForceOracleAcrossShock) {
    InterfaceData<1> d{P1(1.0, 0.6, 3.0), P1(1.0, -0.5, 2.0)};
    d.dt = 1e-3;
    d.Wx0 << -0.4, 2.0, 0.7;
    oracle::Interface in{to_oracle(d.VL), to_oracle(d.VR), d.VL.p, d.VR.p};
    in.wx0 = d.Wx0;
    const oracle::Vec3 ref = oracle::sbgk(in);
    const StateVec<1> f = sbgk_flux(d);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(f(k), ref(k), 1e-8 * std::max(1.0, std::abs(ref(k)))) << k;
}

TEST(Bgk, MatchesBruteForceOracle) {
    InterfaceData<1> d{P1(1.0, 0.6, 3.0), P1(1.0, -0.5, 2.0)};
    d.dt = 1e-3;
    d.WxL << 1.0, -2.0, 0.5;
    d.WxR << -0.5, 1.0, 2.0;
    d.Wx0 << 0.3, 0.4, -1.0;
    oracle::Interface in{to_oracle(d.VL), to_oracle(d.VR), d.VL.p, d.VR.p};
    in.wxl = d.WxL;
    in.wxr = d.WxR;
    in.wx0 = d.Wx0;
    const oracle::Vec3 ref = oracle::bgk(in);
    const StateVec<1> f = bgk1d_flux(d);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(f(k), ref(k), 1e-8 * std::max(1.0, std::abs(ref(k)))) << k;
}

// Larger collision time so the nonequilibrium terms carry real weight.
TEST(Bgk, MatchesBruteForceOracleWithLongCollisionTime) {
    InterfaceData<1> d{P1(2.0, 0.1, 0.5), P1(0.7, 0.3, 1.5)};
    d.dt = 0.05;
    d.WxL << 0.2, 0.1, -0.3;
    d.WxR << -0.1, 0.3, 0.2;
    d.Wx0 << 0.05, -0.2, 0.1;
    oracle::Interface in{to_oracle(d.VL), to_oracle(d.VR), d.VL.p, d.VR.p};
    in.wxl = d.WxL;
    in.wxr = d.WxR;
    in.wx0 = d.Wx0;
    in.dt = d.dt;
    const oracle::Vec3 ref = oracle::bgk(in);
    const StateVec<1> f = bgk1d_flux(d);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(f(k), ref(k), 1e-8 * std::max(1.0, std::abs(ref(k)))) << k;
}

TEST(Kfvs, SupersonicFlowIsUpwind) {
    // rest-frame thermal spread e^-zeta beyond the sonic point is negligible at zeta = 400
    const auto VL = P1(1.0, 0.9, 2.5e-3), VR = P1(0.5, 0.8, 1e-3);
    InterfaceData<1> d{VL, VR};
    const StateVec<1> f = kfvs_flux(d), F = physical_flux(VL);
    EXPECT_LT(rel_err<1>(f, F), 1e-12);
}

TEST(Kfvs, MatchesOracleSplitFluxes) {
    const auto VL = P1(1.0, 0.0, 1.0), VR = P1(0.125, 0.0, 0.1);
    InterfaceData<1> d{VL, VR};
    const StateVec<1> f = kfvs_flux(d);
    oracle::Vec3 ref = oracle::Vec3::Zero();
    oracle::integrate(to_oracle(VL), oracle::Side::plus, oracle::kPanels, oracle::kPer,
                      [&](double p0, double p1, double, double w) { ref += w * p1 * oracle::psi(p0, p1); });
    oracle::integrate(to_oracle(VR), oracle::Side::minus, oracle::kPanels, oracle::kPer,
                      [&](double p0, double p1, double, double w) { ref += w * p1 * oracle::psi(p0, p1); });
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(f(k), ref(k), 1e-9 * std::max(1.0, std::abs(ref(k)))) << k;
    EXPECT_GT(f(0), 0.0);
}

TEST(Llf, MatchesIndependentValues) {
    struct Case {
        Primitive<1> L, R;
        double f[3];
    };
    const std::vector<Case> cases = {
        {P1(5.0, 0.0, 10.0), P1(1.0, 0.0, 0.5), {1.1436376150474706, 5.25, 8.3044615845135157}},
        {P1(1.0, 0.6, 3.0), P1(1.0, -0.5, 2.0), {0.12794834102869391, 14.658535724906643, 6.0290843849722035}},
    };
    for (const auto& c : cases) {
        const StateVec<1> f = llf_flux(c.L, c.R);
        for (int k = 0; k < 3; ++k) EXPECT_NEAR(f(k), c.f[k], 1e-12 * std::max(1.0, std::abs(c.f[k])));
    }
}

TEST(Llf, SpectralRadiusIsMonotone) {
    double prev = 0.0;
    for (double u : {0.0, 0.3, 0.6, 0.9, 0.99}) {
        const double a = spectral_radius(P1(1.0, u, 1.0), 1);
        EXPECT_GT(a, prev);
        EXPECT_LT(a, 1.0);
        prev = a;
    }
    prev = 0.0;
    for (double p : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
        const double a = spectral_radius(P1(1.0, 0.0, p), 1);
        EXPECT_GT(a, prev);
        EXPECT_LT(a, 1.0 / std::sqrt(3.0));
        prev = a;
    }
    // with equal pressures at rest only the dissipation moves mass
    const auto VL = P1(1.0, 0.0, 1.0), VR = P1(0.5, 0.0, 1.0);
    const double alpha = std::max(spectral_radius(VL, 1), spectral_radius(VR, 1));
    EXPECT_NEAR(llf_flux(VL, VR)(0), 0.25 * alpha, 1e-14);
}

TEST(Errors, InadmissibleStatesThrow) {
    InterfaceData<1> d{P1(1.0, 0.0, 1.0), P1(-1.0, 0.0, 1.0)};
    d.dt = 1e-3;
    for (auto k : {FluxKind::sbgk, FluxKind::bgk1d, FluxKind::kfvs, FluxKind::llf})
        EXPECT_THROW(interface_flux(k, d), NonPhysicalState) << to_string(k);
    EXPECT_THROW(flux_kind_from_string("roe"), DomainError);
    EXPECT_EQ(flux_kind_from_string("bgk"), FluxKind::bgk1d);
}

}  // namespace
