#include "srgk/moments.hpp"
#include "oracle/moment_oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace srgk;

namespace {

template <int Dim>
MomentMatrices<Dim> brute_matrices(const oracle::Juttner& g) {
    const auto b = oracle::matrices<Dim>(g);
    MomentMatrices<Dim> m;
    for (int k = 0; k <= Dim; ++k)
        for (int i = 0; i < Dim + 2; ++i)
            for (int j = 0; j < Dim + 2; ++j) m[k](i, j) = b[k][i][j];
    return m;
}

template <int Dim>
double max_rel_diff(const MomentMatrices<Dim>& a, const MomentMatrices<Dim>& b) {
    double scale = 0.0, diff = 0.0;
    for (int k = 0; k <= Dim; ++k) {
        scale = std::max(scale, b[k].cwiseAbs().maxCoeff());
        diff = std::max(diff, (a[k] - b[k]).cwiseAbs().maxCoeff());
    }
    return diff / scale;
}

TEST(Moments, RestMomentClosedForms) {
    const double rho = 1.3, z = 2.0;
    const EosEval t = eos_eval(z);
    EXPECT_NEAR(rest_moment(1, rho, z), rho, 1e-15);
    EXPECT_NEAR(rest_moment(0, rho, z), rho * (t.G - 4.0 / z), 1e-13);
    EXPECT_NEAR(rest_moment(2, rho, z), rho * (t.G - 1.0 / z), 1e-13);
    EXPECT_NEAR(rest_moment(3, rho, z), rho * (3.0 * t.G / z + 1.0), 1e-13);
}

TEST(Moments, RestMomentHigherOrderAgainstQuadrature) {
    const oracle::Juttner g{1.0, 1.0, 0.0, 0.0, 2.0};
    for (int l : {0, 3, 4, 5, 6}) {
        double ref = 0.0;
        oracle::integrate(g, oracle::Side::full, 4, 20,
                          [&](double p0, double, double, double w) { ref += w * std::pow(p0, l); });
        EXPECT_NEAR(rest_moment(l, 1.0, 2.0) / ref, 1.0, 1e-8) << l;
    }
}

TEST(Moments, BoostIdentityAndMetric) {
    EXPECT_TRUE(boost_matrix(1.0, 0.0, 0.0).isApprox(Eigen::Matrix4d::Identity(), 1e-15));
    const Eigen::Matrix4d g = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int k = 0; k < 50; ++k) {
        const double u1 = d(rng), u2 = d(rng);
        const Eigen::Matrix4d L = boost_matrix(std::sqrt(1.0 + u1 * u1 + u2 * u2), u1, u2);
        EXPECT_LT((L.transpose() * g * L - g).cwiseAbs().maxCoeff(), 1e-12);
    }
    const double w = 1.25;  // u1 = 0.6
    const Eigen::Matrix4d L = boost_matrix(w, 0.75);
    EXPECT_DOUBLE_EQ(L(0, 0), w);
    EXPECT_DOUBLE_EQ(L(1, 0), 0.75);
    EXPECT_DOUBLE_EQ(L(2, 0), 0.0);
}

TEST(Moments, TensorsInRestFrame) {
    const EquilibriumSpec<2> s{2.0, {1.0, 0.0, 0.0}, 3.0};
    const auto t = moment_tensors(s);
    const double G = enthalpy_G(3.0);
    EXPECT_NEAR(t.N(0), 2.0, 1e-15);
    EXPECT_NEAR(t.T(0, 0), 2.0 * (G - 1.0 / 3.0), 1e-13);
    EXPECT_NEAR(t.T(1, 1), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(t.T(0, 1), 0.0, 1e-15);
    EXPECT_NEAR(t.r(0, 1, 1), 2.0 * G / 3.0, 1e-13);
}

TEST(Moments, ThirdTensorAgainstQuadrature) {
    const auto s = EquilibriumSpec<1>::from_primitive({1.0, {0.3}, 0.5});
    const auto t = moment_tensors(s);
    const auto g = oracle::Juttner::from_primitive(1.0, 0.3, 0.0, 0.5);
    double R[2][2][2] = {};
    oracle::integrate(g, oracle::Side::full, 4, 20, [&](double p0, double p1, double, double w) {
        const double p[2] = {p0, p1};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) R[a][b][c] += w * p[a] * p[b] * p[c];
    });
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) EXPECT_NEAR(t.r(a, b, c) / R[a][b][c], 1.0, 1e-8);
}

TEST(Moments, OneDimensionalRestMatrix) {
    const double rho = 1.7, z = 0.8, G = enthalpy_G(z);
    const auto m = m_matrices(EquilibriumSpec<1>{rho, {1.0, 0.0}, z});
    StateMat<1> expect;
    expect << rho, 0.0, rho * G - rho / z, 0.0, rho * G / z, 0.0, rho * G - rho / z, 0.0, rho * (3.0 * G + z) / z;
    EXPECT_LT((m[0] - expect).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Moments, TwoCodePathsAgree) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> un(-0.6, 0.6), lz(std::log(0.05), std::log(50.0));
    for (int k = 0; k < 40; ++k) {
        const auto s2 = EquilibriumSpec<2>::from_primitive({1.0, {un(rng), un(rng)}, 1.0 / std::exp(lz(rng))});
        EXPECT_LT(max_rel_diff(m_matrices(s2), m_matrices_from_tensors(s2)), 1e-12);
        const auto s1 = EquilibriumSpec<1>::from_primitive({1.0, {un(rng)}, 1.0 / std::exp(lz(rng))});
        EXPECT_LT(max_rel_diff(m_matrices(s1), m_matrices_from_tensors(s1)), 1e-12);
    }
}

TEST(Moments, MatricesAgainstQuadrature2D) {
    const auto s = EquilibriumSpec<2>::from_primitive({1.0, {0.3, -0.2}, 1.0 / 1.5});
    const auto g = oracle::Juttner::from_primitive(1.0, 0.3, -0.2, 1.0 / 1.5);
    EXPECT_LT(max_rel_diff(m_matrices(s), brute_matrices<2>(g)), 1e-8);
}

TEST(Moments, MatricesAgainstQuadratureRandomStates) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> un(-0.5, 0.5), lz(std::log(0.5), std::log(5.0)), lr(-1.0, 1.0);
    for (int k = 0; k < 5; ++k) {
        const double rho = std::exp(lr(rng)), v1 = un(rng), v2 = un(rng), z = std::exp(lz(rng));
        const auto s = EquilibriumSpec<2>::from_primitive({rho, {v1, v2}, rho / z});
        const auto g = oracle::Juttner::from_primitive(rho, v1, v2, rho / z);
        EXPECT_LT(max_rel_diff(m_matrices(s), brute_matrices<2>(g)), 1e-8) << k;
    }
}

TEST(Moments, CholeskySucceedsOnRandomSpecs) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> sp(0.0, 0.95), ang(0.0, 6.283), lz(std::log(0.05), std::log(50.0));
    for (int k = 0; k < 100; ++k) {
        const double q = sp(rng), a = ang(rng);
        const auto s = EquilibriumSpec<2>::from_primitive({1.0, {q * std::cos(a), q * std::sin(a)}, 1.0 / std::exp(lz(rng))});
        EXPECT_EQ(Eigen::LLT<StateMat<2>>(m_matrices(s)[0]).info(), Eigen::Success);
    }
}

TEST(Moments, SlopeSolveProperties) {
    const auto s = EquilibriumSpec<2>::from_primitive({1.0, {0.3, -0.2}, 0.7});
    const auto m = m_matrices(s);
    const auto zero = solve_slopes(m, StateVec<2>::Zero(), StateVec<2>::Zero());
    EXPECT_EQ(zero.a.norm() + zero.b.norm() + zero.A.norm(), 0.0);

    const auto e1 = solve_slopes(m, StateVec<2>(m[0].col(1)), StateVec<2>::Zero());
    EXPECT_LT((e1.a - StateVec<2>::Unit(1)).norm(), 1e-12);

    StateVec<2> wx, wy;
    wx << 0.3, -1.0, 0.2, 2.0;
    wy << -0.1, 0.4, 0.9, -0.5;
    const auto c = solve_slopes(m, wx, wy);
    EXPECT_LT((m[0] * c.a - wx).norm(), 1e-12 * wx.norm());
    const StateVec<2> cons = m[0] * c.A + m[1] * c.a + m[2] * c.b;
    EXPECT_LT(cons.norm(), 1e-12 * (m[1] * c.a).norm());
}

TEST(Moments, SlopeSolveRejectsIndefiniteMatrix) {
    MomentMatrices<1> m;
    for (auto& M : m.M) M.setIdentity();
    m[0](2, 2) = -1.0;
    EXPECT_THROW(solve_slopes(m, StateVec<1>::Ones()), SingularMatrix);
}

}  // namespace
