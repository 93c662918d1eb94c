#include "srgk/halfplane.hpp"
#include "srgk/moments.hpp"
#include "oracle/moment_oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace srgk;

namespace {

constexpr double pi = std::numbers::pi;

using oracle::angular;

TEST(Angular, FullSphereValues) {
    const auto I = angular_integrals(0, 0.0);
    EXPECT_DOUBLE_EQ(I[0], 4.0 * pi);
    EXPECT_DOUBLE_EQ(I[5], 8.0 * pi / 3.0);
}

TEST(Angular, SymmetricSplitAtZero) {
    const auto I2 = angular_integrals(2, 0.0), I3 = angular_integrals(3, 0.0);
    EXPECT_NEAR(I2[0], I3[0], 1e-14);
    EXPECT_NEAR(I2[2], pi, 1e-14);
}

TEST(Angular, StructuralZerosAndMirrors) {
    for (double h : {-0.8, -0.1, 0.0, 0.37, 0.99}) {
        const auto I1 = angular_integrals(1, h), I2 = angular_integrals(2, h), I3 = angular_integrals(3, h);
        for (int k : {1, 2, 3, 4}) EXPECT_EQ(I1[k], 0.0);
        for (int k : {1, 4}) {
            EXPECT_EQ(I2[k], 0.0);
            EXPECT_EQ(I3[k], 0.0);
        }
        EXPECT_NEAR(I3[2], -I2[2], 1e-15);
        EXPECT_NEAR(I3[3], -I2[3], 1e-15);
        // caps twice plus the two split regions cover the sphere
        EXPECT_NEAR(2.0 * I1[0] + I2[0] + I3[0], 4.0 * pi, 1e-13);
        EXPECT_NEAR(2.0 * I1[5] + I2[5] + I3[5], 8.0 * pi / 3.0, 1e-13);
    }
}

TEST(Angular, MatchesDirectQuadratureAt037) {
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 6; ++k)
            EXPECT_NEAR(angular_integrals(j, 0.37)[k - 1], angular(j, k, 0.37), 1e-10) << j << "," << k;
}

TEST(Angular, MatchesDirectQuadratureOnFiftyPoints) {
    for (int n = 0; n < 50; ++n) {
        const double h = -0.98 + 1.96 * n / 49.0;
        for (int j = 2; j <= 3; ++j)
            for (int k : {1, 3, 4, 6}) EXPECT_NEAR(angular_integrals(j, h)[k - 1], angular(j, k, h), 1e-10) << h;
        EXPECT_NEAR(angular_integrals(1, h)[0], angular(1, 1, h), 1e-10) << h;
        EXPECT_NEAR(angular_integrals(1, h)[5], angular(1, 6, h), 1e-10) << h;
    }
}

// --- one dimension --------------------------------------------------------

TEST(HalfPlane1D, RestStateHalvesMass) {
    const EquilibriumSpec<1> s{1.0, {1.0, 0.0}, 2.0};
    const auto t = monomial_moments_1d<2>(s, HalfSpace::plus);
    EXPECT_NEAR(t(1, 0), 0.5, 1e-12);
}

TEST(HalfPlane1D, ComplementarityAllWeights) {
    const auto s = EquilibriumSpec<1>::from_primitive({1.0, {0.5}, 0.5});
    for (const MomentWeight w : {MomentWeight::unit(), MomentWeight::own(), MomentWeight::inverse_lab_energy()}) {
        const auto f = monomial_moments_1d<4>(s, HalfSpace::full, w);
        const auto p = monomial_moments_1d<4>(s, HalfSpace::plus, w);
        const auto m = monomial_moments_1d<4>(s, HalfSpace::minus, w);
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; i + j <= 4; ++j) {
                const double scale = std::abs(f(i, j)) + std::abs(p(i, j)) + 1e-300;
                EXPECT_LT(std::abs(p(i, j) + m(i, j) - f(i, j)) / scale, 1e-10) << i << "," << j;
            }
    }
}

TEST(HalfPlane1D, FullSpaceMatchesClosedForms) {
    for (double u : {-0.9, 0.0, 0.3}) {
        for (double z : {0.05, 1.0, 40.0}) {
            const auto s = EquilibriumSpec<1>::from_primitive({1.0, {u}, 1.0 / z});
            const auto t = moment_tensors(s);
            const auto f = monomial_moments_1d<3>(s, HalfSpace::full);
            EXPECT_NEAR(f(1, 0) / t.N(0), 1.0, 1e-10);
            EXPECT_NEAR(f(2, 0) / t.T(0, 0), 1.0, 1e-10);
            EXPECT_NEAR(f(0, 2) / t.T(1, 1), 1.0, 1e-10);
            EXPECT_NEAR(f(1, 2) / t.r(0, 1, 1), 1.0, 1e-10);
            EXPECT_NEAR(f(0, 0) / rest_moment(0, 1.0, z), 1.0, 1e-10);  // <1> is invariant
        }
    }
}

TEST(HalfPlane1D, AgainstQuadratureOracle) {
    const double rho = 1.0, u = 0.3, p = 0.5;
    const auto s = EquilibriumSpec<1>::from_primitive({rho, {u}, p});
    const auto g = oracle::Juttner::from_primitive(rho, u, 0.0, p);
    const double U0 = s.U[0], U1 = s.U[1];
    for (auto side : {HalfSpace::plus, HalfSpace::minus}) {
        double ref[3][4][4] = {};
        oracle::integrate(g, side == HalfSpace::plus ? oracle::Side::plus : oracle::Side::minus, 4, 20,
                          [&](double p0, double p1, double, double w) {
                              const double wt[3] = {1.0, 1.0 / (U0 * p0 - U1 * p1), 1.0 / p0};
                              for (int q = 0; q < 3; ++q)
                                  for (int i = 0; i < 4; ++i)
                                      for (int j = 0; i + j < 4; ++j)
                                          ref[q][i][j] += w * wt[q] * std::pow(p0, i) * std::pow(p1, j);
                          });
        const MomentWeight ws[3] = {MomentWeight::unit(), MomentWeight::own(), MomentWeight::inverse_lab_energy()};
        for (int q = 0; q < 3; ++q) {
            const auto t = monomial_moments_1d<3>(s, side, ws[q]);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; i + j < 4; ++j) EXPECT_NEAR(t(i, j) / ref[q][i][j], 1.0, 1e-8) << q << i << j;
        }
    }
}

TEST(HalfPlane1D, SignPatternOfMassFlux) {
    for (double u : {-0.95, -0.2, 0.0, 0.4, 0.99}) {
        const auto s = EquilibriumSpec<1>::from_primitive({1.0, {u}, 0.3});
        EXPECT_GE(half_moments(s, HalfSpace::plus).N(1), 0.0);
        EXPECT_LE(half_moments(s, HalfSpace::minus).N(1), 0.0);
    }
}

TEST(HalfPlane1D, SupersonicColdStreamIsOneSided) {
    const auto s = EquilibriumSpec<1>::from_primitive({1.0, {0.99}, 0.01});
    const auto p = half_moments(s, HalfSpace::plus), m = half_moments(s, HalfSpace::minus);
    const auto t = moment_tensors(s);
    EXPECT_NEAR(p.N(1) / t.N(1), 1.0, 1e-10);
    EXPECT_LT(std::abs(m.N(1)), 1e-14 * t.N(1));
}

// --- two dimensions -------------------------------------------------------

void expect_close(const HalfMoments<2>& a, const HalfMoments<2>& b, double tol) {
    const double scale = std::max(b.T.cwiseAbs().maxCoeff(), b.N.cwiseAbs().maxCoeff());
    EXPECT_LT((a.N - b.N).cwiseAbs().maxCoeff() / scale, tol);
    EXPECT_LT((a.T - b.T).cwiseAbs().maxCoeff() / scale, tol);
}

HalfMoments<2> brute_half(const oracle::Juttner& g, oracle::Side side) {
    const auto t = oracle::tensors(g, side, 8);
    HalfMoments<2> h;
    h.scalar = t.scalar;
    for (int a = 0; a < 3; ++a) {
        h.N(a) = t.N[a];
        for (int b = 0; b < 3; ++b) h.T(a, b) = t.T[a][b];
    }
    return h;
}

TEST(HalfPlane2D, Complementarity) {
    const auto s = EquilibriumSpec<2>::from_primitive({1.0, {0.3, -0.4}, 1.0 / 1.5});
    HalfMoments<2> sum = half_moments(s, HalfSpace::plus);
    sum += half_moments(s, HalfSpace::minus);
    const auto full = half_moments(s, HalfSpace::full);
    expect_close(sum, full, 1e-9);
    const auto t = moment_tensors(s);
    EXPECT_LT((full.N - t.N).norm() / t.N.norm(), 1e-10);
    EXPECT_LT((full.T - t.T).norm() / t.T.norm(), 1e-10);
}

TEST(HalfPlane2D, IsotropicRestState) {
    const EquilibriumSpec<2> s2{1.0, {1.0, 0.0, 0.0}, 2.0};
    const EquilibriumSpec<1> s1{1.0, {1.0, 0.0}, 2.0};
    EXPECT_NEAR(half_moments(s2, HalfSpace::plus).N(1), half_moments(s1, HalfSpace::plus).N(1), 1e-12);
}

TEST(HalfPlane2D, ReducesToOneDimension) {
    for (double u : {-0.7, 0.2, 0.8}) {
        const auto s2 = EquilibriumSpec<2>::from_primitive({0.9, {u, 0.0}, 0.4});
        const auto s1 = EquilibriumSpec<1>::from_primitive({0.9, {u}, 0.4});
        for (auto side : {HalfSpace::plus, HalfSpace::minus}) {
            const auto a = half_moments(s2, side);
            const auto b = monomial_moments_1d<2>(s1, side);
            EXPECT_NEAR(a.N(0), b(1, 0), 1e-10);
            EXPECT_NEAR(a.N(1), b(0, 1), 1e-10);
            EXPECT_NEAR(a.T(0, 0), b(2, 0), 1e-10);
            EXPECT_NEAR(a.T(0, 1), b(1, 1), 1e-10);
            EXPECT_NEAR(a.T(1, 1), b(0, 2), 1e-10);
            EXPECT_NEAR(a.N(2), 0.0, 1e-12);
        }
    }
}

TEST(HalfPlane2D, ReducedPathMatchesAngularQuadrature) {
    for (double z : {1e-3, 0.05, 0.7, 3.0, 40.0, 2e3}) {
        for (double v1 : {-0.999, -0.6, -1e-3, 0.0, 1e-6, 0.3, 0.95}) {
            const double v2 = 0.2 * (1.0 - std::abs(v1));
            const auto s = EquilibriumSpec<2>::from_primitive({1.0, {v1, v2}, 1.0 / z});
            // errors measured against the full-space moments, the scale entering any flux
            const auto full = moment_tensors(s);
            for (auto side : {HalfSpace::plus, HalfSpace::minus}) {
                const auto a = half_moments(s, side);
                const auto b = half_moments_quadrature(s, side, 1e-12);
                EXPECT_LT((a.T - b.T).norm() / full.T.norm(), 1e-10) << z << " " << v1;
                EXPECT_LT((a.N - b.N).norm() / full.N.norm(), 1e-10) << z << " " << v1;
            }
        }
    }
}

TEST(HalfPlane2D, FixedShellRuleAcrossValidatedRange) {
    for (double lz = -4.0; lz <= 5.0; lz += 0.25) {
        for (double u1 : {0.0, 1e-5, 1e-2, 0.3, 1.0, 4.0, 30.0, 1000.0}) {
            const double z = std::pow(10.0, lz);
            const EquilibriumSpec<2> s{1.0, {std::sqrt(1.0 + u1 * u1 + 0.04), u1, -0.2}, z};
            const auto full = moment_tensors(s);
            for (auto side : {HalfSpace::plus, HalfSpace::minus}) {
                const auto a = half_moments(s, side);
                const auto b = half_moments(s, side, 1e-13);
                EXPECT_LT((a.T - b.T).norm() / full.T.norm(), 1e-12) << z << " " << u1;
                EXPECT_LT((a.N - b.N).norm() / full.N.norm(), 1e-12) << z << " " << u1;
            }
        }
    }
}

TEST(HalfPlane2D, ToleranceHalvingIsStable) {
    const auto s = EquilibriumSpec<2>::from_primitive({1.0, {0.4, -0.3}, 0.8});
    for (auto side : {HalfSpace::plus, HalfSpace::minus}) {
        const auto a = half_moments_quadrature(s, side, 1e-10);
        const auto b = half_moments_quadrature(s, side, 5e-11);
        EXPECT_LT((a.T - b.T).norm() / b.T.norm(), 1e-9);
        const auto c = half_moments(s, side, 1e-10);
        const auto d = half_moments(s, side, 1e-13);  // adaptive shell integrals
        EXPECT_LT((c.T - d.T).norm() / d.T.norm(), 1e-9);
    }
}

TEST(HalfPlane2D, AgainstQuadratureOracle) {
    struct Case {
        double rho, v1, v2, p;
    };
    for (const Case c : {Case{0.5, 0.7, 0.0, 0.1}, Case{1.0, -0.3, 0.5, 1.0}, Case{1.2, 0.1, -0.6, 0.6}}) {
        const auto s = EquilibriumSpec<2>::from_primitive({c.rho, {c.v1, c.v2}, c.p});
        const auto g = oracle::Juttner::from_primitive(c.rho, c.v1, c.v2, c.p);
        expect_close(half_moments(s, HalfSpace::plus), brute_half(g, oracle::Side::plus), 1e-8);
        expect_close(half_moments(s, HalfSpace::minus), brute_half(g, oracle::Side::minus), 1e-8);
        expect_close(half_moments_quadrature(s, HalfSpace::plus), brute_half(g, oracle::Side::plus), 1e-8);
    }
}

TEST(HalfPlane2D, ExtremeTemperatures) {
    for (double z : {0.01, 200.0}) {
        for (double u : {-0.9, 0.6}) {
            const auto s = EquilibriumSpec<2>::from_primitive({1.0, {u, 0.3}, 1.0 / z});
            HalfMoments<2> sum = half_moments(s, HalfSpace::plus);
            sum += half_moments(s, HalfSpace::minus);
            const auto t = moment_tensors(s);
            EXPECT_LT((sum.N - t.N).norm() / t.N.norm(), 1e-9) << z << " " << u;
            EXPECT_LT((sum.T - t.T).norm() / t.T.norm(), 1e-9) << z << " " << u;
        }
    }
}

}  // namespace
