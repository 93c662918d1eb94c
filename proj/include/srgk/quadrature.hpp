#pragma once
/// @file quadrature.hpp
/// @brief Vector-valued adaptive Gauss-Kronrod quadrature and Gauss-Legendre rules.

#include "srgk/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

namespace srgk::quad {

namespace detail {
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t K>
struct Panel {
    double a = 0.0, b = 0.0;
    std::array<double, K> value{};
    std::array<double, K> error{};
    double worst = 0.0;  // largest scaled error component
};

template <std::size_t K, class F>
void gk15(F& f, Panel<K>& pn) {
    const double c = 0.5 * (pn.a + pn.b);
    const double h = 0.5 * (pn.b - pn.a);
    std::array<double, K> kr{}, ga{};
    {
        const std::array<double, K> fc = f(c);
        for (std::size_t k = 0; k < K; ++k) {
            kr[k] = kWgk[7] * fc[k];
            ga[k] = kWg[3] * fc[k];
        }
    }
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const std::array<double, K> f1 = f(c - dx);
        const std::array<double, K> f2 = f(c + dx);
        for (std::size_t k = 0; k < K; ++k) {
            const double s = f1[k] + f2[k];
            kr[k] += kWgk[j] * s;
            if (j % 2 == 1) ga[k] += kWg[j / 2] * s;
        }
    }
    for (std::size_t k = 0; k < K; ++k) {
        pn.value[k] = kr[k] * h;
        pn.error[k] = std::abs((kr[k] - ga[k]) * h);
    }
}
}  // namespace detail

/// Result of an adaptive vector integration.
template <std::size_t K>
struct QuadResult {
    std::array<double, K> value{};
    std::array<double, K> error{};
    int panels = 0;
};

/// Adaptive GK15 for a functor double -> std::array<double, K>.
///
/// Component k is accepted when its error estimate is below
/// rel_tol * max(|I_k|, floor_frac * max_j |I_j|) + abs_tol. The panel with
/// the largest scaled error is bisected until every component is accepted.
template <std::size_t K, class F>
QuadResult<K> integrate(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                        int max_panels = 128, double floor_frac = 1e-6) {
    using detail::Panel;
    QuadResult<K> res;
    if (a == b) return res;
    std::vector<Panel<K>> panels;
    panels.reserve(static_cast<std::size_t>(max_panels));
    panels.push_back({a, b});
    detail::gk15<K>(f, panels.back());

    for (;;) {
        std::array<double, K> tot{}, err{};
        for (const auto& pn : panels)
            for (std::size_t k = 0; k < K; ++k) {
                tot[k] += pn.value[k];
                err[k] += pn.error[k];
            }
        double big = 0.0;
        for (std::size_t k = 0; k < K; ++k) big = std::max(big, std::abs(tot[k]));
        bool ok = true;
        std::array<double, K> allow{};
        for (std::size_t k = 0; k < K; ++k) {
            allow[k] = rel_tol * std::max(std::abs(tot[k]), floor_frac * big) + abs_tol;
            if (err[k] > allow[k]) ok = false;
        }
        if (ok || !std::isfinite(big)) {
            res.value = tot;
            res.error = err;
            res.panels = static_cast<int>(panels.size());
            if (!std::isfinite(big)) throw QuadratureFailure("quadrature: non-finite integrand");
            return res;
        }
        if (static_cast<int>(panels.size()) >= max_panels) {
            throw QuadratureFailure("quadrature: panel budget exhausted before reaching tolerance");
        }
        std::size_t worst = 0;
        double worst_val = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            double w = 0.0;
            for (std::size_t k = 0; k < K; ++k)
                if (allow[k] > 0.0) w = std::max(w, panels[i].error[k] / allow[k]);
                else if (panels[i].error[k] > 0.0) w = std::numeric_limits<double>::infinity();
            if (w > worst_val) {
                worst_val = w;
                worst = i;
            }
        }
        const double mid = 0.5 * (panels[worst].a + panels[worst].b);
        if (!(mid > panels[worst].a && mid < panels[worst].b)) {
            throw QuadratureFailure("quadrature: panel cannot be subdivided further");
        }
        Panel<K> right{mid, panels[worst].b};
        panels[worst].b = mid;
        detail::gk15<K>(f, panels[worst]);
        detail::gk15<K>(f, right);
        panels.push_back(right);
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
};

inline GaussRule gauss_legendre(int n) {
    GaussRule g;
    g.x.resize(static_cast<std::size_t>(n));
    g.w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
        }
        const auto iu = static_cast<std::size_t>(i);
        const auto il = static_cast<std::size_t>(n - 1 - i);
        g.x[iu] = -z;
        g.x[il] = z;
        g.w[iu] = g.w[il] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return g;
}

}  // namespace srgk::quad
