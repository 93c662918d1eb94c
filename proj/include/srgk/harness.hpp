#pragma once
/// @file harness.hpp
/// @brief Benchmark cases, error norms, convergence tables and CSV output.

#include "srgk/core.hpp"
#include "srgk/eos.hpp"
#include "srgk/flux.hpp"
#include "srgk/riemann_exact.hpp"
#include "srgk/solver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace srgk {

using Profile = std::function<Primitive<2>(double x, double y)>;

enum class ReferenceKind { none, exact_riemann, analytic_advection };

/// How initial data and smooth references are put on the mesh: values at cell
/// centres, or 3-point Gauss averages of the conserved variables.
enum class Sampling { point, cell_average };

inline std::string to_string(Sampling s) { return s == Sampling::point ? "point" : "cell_average"; }
inline Sampling sampling_from_string(const std::string& s) {
    if (s == "point") return Sampling::point;
    if (s == "cell_average") return Sampling::cell_average;
    throw DomainError("unknown sampling '" + s + "'");
}

struct CaseSpec {
    std::string name;
    std::string title;
    int dim = 1;
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    int nx = 100, ny = 1;
    double t_end = 0.0;
    Boundaries boundaries;
    Limiter limiter = Limiter::vanleer;
    CollisionTimeParams collision;
    Profile initial;
    ReferenceKind reference = ReferenceKind::none;
    /// Riemann data for exact_riemann references, split at x_split.
    Primitive<1> left, right;
    double x_split = 0.5;
    /// Exact solution at (x, y, t) for analytic_advection references.
    std::function<Primitive<2>(double, double, double)> advection;
};

namespace harness_detail {

inline Primitive<2> P2(double rho, double u1, double u2, double p) { return {rho, {u1, u2}, p}; }
inline Primitive<2> P1(double rho, double u1, double p) { return {rho, {u1, 0.0}, p}; }

inline CaseSpec riemann_1d(std::string name, std::string title, int n, Primitive<1> L, Primitive<1> R) {
    CaseSpec c;
    c.name = std::move(name);
    c.title = std::move(title);
    c.nx = n;
    c.t_end = 0.5;
    c.left = L;
    c.right = R;
    c.reference = ReferenceKind::exact_riemann;
    c.initial = [L, R](double x, double) { return x < 0.5 ? P1(L.rho, L.u[0], L.p) : P1(R.rho, R.u[0], R.p); };
    return c;
}

inline CaseSpec quadrants(std::string name, std::string title, std::array<Primitive<2>, 4> q) {
    // q: x>.5 y>.5, x<.5 y>.5, x<.5 y<.5, x>.5 y<.5
    CaseSpec c;
    c.name = std::move(name);
    c.title = std::move(title);
    c.dim = 2;
    c.nx = c.ny = 400;
    c.t_end = 0.4;
    c.initial = [q](double x, double y) {
        if (y > 0.5) return x > 0.5 ? q[0] : q[1];
        return x < 0.5 ? q[2] : q[3];
    };
    return c;
}

inline std::vector<CaseSpec> build_registry() {
    constexpr double pi = 3.14159265358979323846;
    std::vector<CaseSpec> r;
    {
        CaseSpec c;
        c.name = "smooth1d";
        c.title = "sine wave advected through a periodic domain";
        c.nx = 100;
        c.t_end = 0.2;
        c.boundaries = Boundaries::all(BoundaryKind::periodic);
        c.advection = [pi](double x, double, double t) {
            return P1(1.0 + 0.5 * std::sin(2.0 * pi * (x - 0.2 * t)), 0.2, 1.0);
        };
        c.initial = [f = c.advection](double x, double y) { return f(x, y, 0.0); };
        c.reference = ReferenceKind::analytic_advection;
        r.push_back(c);
    }
    r.push_back(riemann_1d("rp1", "two rarefactions around a stationary contact", 200, {1.0, {-0.5}, 2.0},
                           {1.0, {0.5}, 2.0}));
    r.push_back(riemann_1d("rp2", "colliding streams: two shocks and a contact", 400, {1.0, {0.6}, 3.0},
                           {1.0, {-0.5}, 2.0}));
    r.push_back(riemann_1d("rp3", "shock tube: rarefaction, contact and shock", 400, {5.0, {0.0}, 10.0},
                           {1.0, {0.0}, 0.5}));
    {
        CaseSpec c;
        c.name = "perturbed";
        c.title = "shock running into a sinusoidal density field";
        c.nx = 400;
        c.t_end = 0.5;
        c.initial = [](double x, double) {
            return x < 0.5 ? P1(1.0, 0.0, 1.0) : P1(2.0 + 0.3 * std::sin(50.0 * x), 0.0, 0.1);
        };
        r.push_back(c);
    }
    {
        CaseSpec c;
        c.name = "blast";
        c.title = "collision of two blast waves between reflecting walls";
        c.nx = 1000;
        c.t_end = 0.75;
        c.boundaries = Boundaries::all(BoundaryKind::reflecting);
        c.initial = [](double x, double) {
            return x < 0.1 ? P1(1.0, 0.0, 100.0) : x < 0.9 ? P1(1.0, 0.0, 0.01) : P1(1.0, 0.0, 10.0);
        };
        r.push_back(c);
    }
    {
        CaseSpec c;
        c.name = "smooth2d";
        c.title = "sine wave advected diagonally through a periodic square";
        c.dim = 2;
        c.nx = c.ny = 100;
        c.t_end = 0.2;
        c.boundaries = Boundaries::all(BoundaryKind::periodic);
        c.advection = [pi](double x, double y, double t) {
            return P2(1.0 + 0.5 * std::sin(2.0 * pi * (x - 0.2 * t + y - 0.2 * t)), 0.2, 0.2, 1.0);
        };
        c.initial = [f = c.advection](double x, double y) { return f(x, y, 0.0); };
        c.reference = ReferenceKind::analytic_advection;
        r.push_back(c);
    }
    r.push_back(quadrants("rp2d_1", "four rarefactions", {P2(1.0, 0.0, 0.0, 1.0), P2(0.5121, -0.3548, 0.0, 0.4),
                                                          P2(1.0, -0.3548, -0.3548, 1.0),
                                                          P2(0.5121, 0.0, -0.3548, 0.4)}));
    {
        auto c = quadrants("rp2d_2", "two shocks and two contacts",
                           {P2(0.025510800277587, 0.0, 0.0, 0.142814727617575), P2(0.1, 0.7, 0.0, 1.0),
                            P2(0.5, 0.0, 0.0, 1.0), P2(0.1, 0.0, 0.7, 1.0)});
        c.collision = {1.0, 1.0, 1.0, 1.0};
        r.push_back(c);
    }
    r.push_back(quadrants("rp2d_3", "four vortex sheets", {P2(0.5, 0.5, -0.5, 5.0), P2(1.0, 0.5, 0.5, 5.0),
                                                           P2(3.0, -0.5, 0.5, 5.0), P2(1.5, -0.5, -0.5, 5.0)}));
    {
        CaseSpec c;
        c.name = "implosion";
        c.title = "implosion in a box with reflecting walls";
        c.dim = 2;
        c.nx = c.ny = 400;
        c.t_end = 3.0;
        c.boundaries = Boundaries::all(BoundaryKind::reflecting);
        c.initial = [](double x, double y) {
            return std::abs(x - 1.0) <= 0.5 && std::abs(y - 1.0) <= 0.5 ? P2(1.0, 0.0, 0.0, 10.0)
                                                                         : P2(1.0, 0.0, 0.0, 0.01);
        };
        r.push_back(c);
    }
    {
        CaseSpec c;
        c.name = "jet";
        c.title = "relativistic jet entering a static medium";
        c.dim = 2;
        c.x0 = 0.0;
        c.x1 = 12.0;
        c.y0 = -3.5;
        c.y1 = 3.5;
        c.nx = 600;
        c.ny = 350;
        c.t_end = 10.0;
        c.limiter = Limiter::minmod;
        c.collision = {1.0, 1.0, 1.0, 1.0};
        c.boundaries.side = {BoundaryKind::jet_inflow, BoundaryKind::outflow, BoundaryKind::outflow,
                             BoundaryKind::outflow};
        c.boundaries.jet.beam = P2(0.01, 0.99, 0.0, 0.1);
        c.initial = [](double, double) { return P2(1.0, 0.0, 0.0, 0.1); };
        r.push_back(c);
    }
    return r;
}

}  // namespace harness_detail

/// All benchmark cases in a fixed order.
inline const std::vector<CaseSpec>& case_registry() {
    static const std::vector<CaseSpec> r = harness_detail::build_registry();
    return r;
}

inline const CaseSpec& find_case(const std::string& name) {
    for (const auto& c : case_registry())
        if (c.name == name) return c;
    throw DomainError("unknown case '" + name + "'");
}

/// Reference solution at time t, or an empty function.
inline Profile reference_at(const CaseSpec& c, double t) {
    switch (c.reference) {
        case ReferenceKind::none: return {};
        case ReferenceKind::analytic_advection: return [f = c.advection, t](double x, double y) { return f(x, y, t); };
        case ReferenceKind::exact_riemann: {
            auto fan = std::make_shared<RiemannFan>(solve_star(c.left, c.right));
            const double x0 = c.x_split;
            return [fan, t, x0](double x, double) {
                const Primitive<1> s = t > 0.0 ? fan->sample((x - x0) / t) : (x < x0 ? fan->left_state : fan->right_state);
                return Primitive<2>{s.rho, {s.u[0], 0.0}, s.p};
            };
        }
    }
    return {};
}

template <int Dim>
Primitive<Dim> narrow(const Primitive<2>& v) {
    Primitive<Dim> out;
    out.rho = v.rho;
    out.p = v.p;
    for (int i = 0; i < Dim; ++i) out.u[i] = v.u[i];
    return out;
}

/// Average of the conserved variables of f over cell (i, j), 3-point Gauss per direction.
template <int Dim>
StateVec<Dim> gauss_cell_average(const Mesh<Dim>& m, const Profile& f, int i, int j) {
    static constexpr double kNode = 0.77459666924148337704;  // sqrt(3/5)
    static constexpr std::array<double, 3> kX{-kNode, 0.0, kNode};
    static constexpr std::array<double, 3> kW{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    StateVec<Dim> s = StateVec<Dim>::Zero();
    const double xc = m.xc(i), yc = m.yc(j), hx = 0.5 * m.dx(), hy = 0.5 * m.dy();
    for (int a = 0; a < 3; ++a) {
        if constexpr (Dim == 1) {
            s += kW[a] * to_conserved(narrow<1>(f(xc + kX[a] * hx, 0.0)));
        } else {
            for (int b = 0; b < 3; ++b)
                s += kW[a] * kW[b] * to_conserved(narrow<2>(f(xc + kX[a] * hx, yc + kX[b] * hy)));
        }
    }
    return s;
}

template <int Dim>
StateVec<Dim> sample_cell(const Mesh<Dim>& m, const Profile& f, int i, int j, Sampling s) {
    return s == Sampling::point ? to_conserved(narrow<Dim>(f(m.xc(i), m.yc(j)))) : gauss_cell_average(m, f, i, j);
}

/// Field holding f sampled on every cell.
template <int Dim>
Field<Dim> initial_field(const Mesh<Dim>& m, const Profile& f, Sampling s = Sampling::point) {
    Field<Dim> w(m);
    for (int j = 0; j < m.ny; ++j)
        for (int i = 0; i < m.nx; ++i)
            w(i, j) = with_location([] { return "in initial data"; }, [&] { return sample_cell(m, f, i, j, s); });
    return w;
}

struct ErrorNorms {
    double l1 = 0.0;
    double linf = 0.0;
};

/// Density errors against a reference sampled like the initial data.
template <int Dim>
ErrorNorms error_norms(const Field<Dim>& f, const Profile& ref, Sampling s = Sampling::point) {
    const auto& m = f.mesh();
    ErrorNorms e;
    for (int j = 0; j < m.ny; ++j)
        for (int i = 0; i < m.nx; ++i) {
            const double rho = to_primitive<Dim>(f(i, j)).rho;
            const double r = s == Sampling::point ? ref(m.xc(i), m.yc(j)).rho
                                                  : to_primitive<Dim>(gauss_cell_average(m, ref, i, j)).rho;
            const double d = std::abs(rho - r);
            e.l1 += d;
            e.linf = std::max(e.linf, d);
        }
    e.l1 *= m.cell_volume();
    return e;
}

// ---------------------------------------------------------------------------
// Snapshots and CSV

/// Primitive variables at cell centres; 2D data are stored row by row (x fastest).
struct Snapshot {
    int dim = 1;
    int nx = 0, ny = 1;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<double> x, y, rho, u1, u2, p;

    std::size_t size() const { return rho.size(); }
    std::string meta_value(const std::string& key) const {
        for (const auto& [k, v] : meta)
            if (k == key) return v;
        return {};
    }
    /// Row j of a 2D snapshot (or the whole 1D profile) as (x, rho) pairs.
    std::vector<double> row(const std::vector<double>& q, int j) const {
        return {q.begin() + static_cast<std::ptrdiff_t>(j) * nx, q.begin() + static_cast<std::ptrdiff_t>(j + 1) * nx};
    }
};

template <int Dim>
Snapshot make_snapshot(const Field<Dim>& f) {
    const auto& m = f.mesh();
    Snapshot s;
    s.dim = Dim;
    s.nx = m.nx;
    s.ny = m.ny;
    for (int j = 0; j < m.ny; ++j)
        for (int i = 0; i < m.nx; ++i) {
            const auto v = to_primitive<Dim>(f(i, j));
            s.x.push_back(m.xc(i));
            s.rho.push_back(v.rho);
            s.u1.push_back(v.u[0]);
            s.p.push_back(v.p);
            if constexpr (Dim == 2) {
                s.y.push_back(m.yc(j));
                s.u2.push_back(v.u[1]);
            }
        }
    s.meta = {{"dim", std::to_string(Dim)}, {"nx", std::to_string(m.nx)}, {"ny", std::to_string(m.ny)}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", f.t);
    s.meta.emplace_back("t", buf);
    return s;
}

inline void write_csv(std::ostream& os, const Snapshot& s) {
    for (const auto& [k, v] : s.meta) os << "# " << k << "=" << v << "\n";
    os << (s.dim == 2 ? "x,y,rho,u1,u2,p\n" : "x,rho,u1,p\n");
    char buf[160];
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s.dim == 2)
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.x[k], s.y[k], s.rho[k], s.u1[k],
                          s.u2[k], s.p[k]);
        else
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.x[k], s.rho[k], s.u1[k], s.p[k]);
        os << buf;
    }
}

inline void write_csv(const std::filesystem::path& path, const Snapshot& s) {
    std::ofstream os(path);
    if (!os) throw DomainError("cannot write " + path.string());
    write_csv(os, s);
}

inline Snapshot read_csv(std::istream& is) {
    Snapshot s;
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            s.meta.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
            continue;
        }
        if (!header) {
            if (line == "x,y,rho,u1,u2,p") s.dim = 2;
            else if (line != "x,rho,u1,p") throw DomainError("csv: unexpected header '" + line + "'");
            header = true;
            continue;
        }
        std::vector<double> v;
        const char* c = line.c_str();
        char* end = nullptr;
        while (*c) {
            v.push_back(std::strtod(c, &end));
            if (end == c) throw DomainError("csv: bad number in '" + line + "'");
            c = *end == ',' ? end + 1 : end;
        }
        if (v.size() != (s.dim == 2 ? 6u : 4u)) throw DomainError("csv: wrong column count");
        if (s.dim == 2) {
            s.x.push_back(v[0]);
            s.y.push_back(v[1]);
            s.rho.push_back(v[2]);
            s.u1.push_back(v[3]);
            s.u2.push_back(v[4]);
            s.p.push_back(v[5]);
        } else {
            s.x.push_back(v[0]);
            s.rho.push_back(v[1]);
            s.u1.push_back(v[2]);
            s.p.push_back(v[3]);
        }
    }
    if (!header) throw DomainError("csv: missing header");
    const std::string nx = s.meta_value("nx"), ny = s.meta_value("ny");
    s.nx = nx.empty() ? static_cast<int>(s.size()) : std::stoi(nx);
    s.ny = ny.empty() ? 1 : std::stoi(ny);
    return s;
}

inline Snapshot read_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw DomainError("cannot read " + path.string());
    return read_csv(is);
}

/// Midpoints of the jumps of q with |q[k+1] - q[k]| >= threshold that are local
/// maxima of the jump size.
inline std::vector<double> shock_position(const std::vector<double>& x, const std::vector<double>& q,
                                          double threshold) {
    std::vector<double> out;
    const std::size_t n = q.size();
    if (n < 2) return out;
    std::vector<double> d(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) d[k] = std::abs(q[k + 1] - q[k]);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (d[k] < threshold) continue;
        if (k > 0 && d[k - 1] > d[k]) continue;
        if (k + 2 < n && d[k + 1] >= d[k]) continue;
        out.push_back(0.5 * (x[k] + x[k + 1]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Key=value configuration

using KeyValues = std::map<std::string, std::string>;

inline KeyValues read_key_values(std::istream& is) {
    KeyValues kv;
    std::string line;
    int n = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(is, line)) {
        ++n;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw DomainError("config line " + std::to_string(n) + ": expected key=value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

inline void write_key_values(std::ostream& os, const KeyValues& kv) {
    for (const auto& [k, v] : kv) os << k << "=" << v << "\n";
}

/// Settings that replace a case's defaults.
struct Overrides {
    std::optional<int> nx, ny;
    std::optional<FluxKind> flux;
    std::optional<Limiter> limiter;
    std::optional<Reconstruction> reconstruct_on;
    std::optional<double> cfl, t_end;
    std::optional<double> C1, C2, alpha1, alpha2;
    std::optional<Sampling> sampling;

    /// Apply the recognised keys of a key=value map; unknown keys are errors.
    void merge(const KeyValues& kv) {
        for (const auto& [k, v] : kv) {
            try {
                if (k == "nx") nx = std::stoi(v);
                else if (k == "ny") ny = std::stoi(v);
                else if (k == "flux") flux = flux_kind_from_string(v);
                else if (k == "limiter") limiter = limiter_from_string(v);
                else if (k == "reconstruct") reconstruct_on = reconstruction_from_string(v);
                else if (k == "cfl") cfl = std::stod(v);
                else if (k == "tend") t_end = std::stod(v);
                else if (k == "C1") C1 = std::stod(v);
                else if (k == "C2") C2 = std::stod(v);
                else if (k == "alpha1") alpha1 = std::stod(v);
                else if (k == "alpha2") alpha2 = std::stod(v);
                else if (k == "sampling") sampling = sampling_from_string(v);
                else if (k != "case" && k != "out") throw DomainError("unknown config key '" + k + "'");
            } catch (const std::logic_error&) {
                throw DomainError("bad value '" + v + "' for config key '" + k + "'");
            }
        }
    }
};

struct RunSetup {
    int nx = 1, ny = 1;
    RunConfig config;
    Sampling sampling = Sampling::point;
};

inline RunSetup resolve(const CaseSpec& c, const Overrides& o) {
    RunSetup s;
    s.nx = o.nx.value_or(c.nx);
    s.ny = c.dim == 2 ? o.ny.value_or(o.nx && !o.ny ? s.nx * c.ny / c.nx : c.ny) : 1;
    auto& r = s.config;
    r.flux = o.flux.value_or(FluxKind::sbgk);
    r.limiter = o.limiter.value_or(c.limiter);
    r.reconstruct_on = o.reconstruct_on.value_or(Reconstruction::primitive);
    r.cfl = o.cfl.value_or(0.4);
    r.t_end = o.t_end.value_or(c.t_end);
    r.collision = c.collision;
    if (o.C1) r.collision.C1 = *o.C1;
    if (o.C2) r.collision.C2 = *o.C2;
    if (o.alpha1) r.collision.alpha1 = *o.alpha1;
    if (o.alpha2) r.collision.alpha2 = *o.alpha2;
    r.boundaries = c.boundaries;
    s.sampling = o.sampling.value_or(Sampling::point);
    if (s.nx < 1 || s.ny < 1) throw DomainError("mesh size must be positive");
    return s;
}

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline KeyValues manifest_entries(const CaseSpec& c, const RunSetup& s) {
    const auto& r = s.config;
    return {{"case", c.name},
            {"dim", std::to_string(c.dim)},
            {"nx", std::to_string(s.nx)},
            {"ny", std::to_string(s.ny)},
            {"flux", to_string(r.flux)},
            {"limiter", to_string(r.limiter)},
            {"reconstruct", to_string(r.reconstruct_on)},
            {"cfl", format_double(r.cfl)},
            {"tend", format_double(r.t_end)},
            {"C1", format_double(r.collision.C1)},
            {"C2", format_double(r.collision.C2)},
            {"alpha1", format_double(r.collision.alpha1)},
            {"alpha2", format_double(r.collision.alpha2)},
            {"sampling", to_string(s.sampling)},
            {"boundaries", to_string(r.boundaries.side[0]) + "," + to_string(r.boundaries.side[1]) + "," +
                               to_string(r.boundaries.side[2]) + "," + to_string(r.boundaries.side[3])}};
}

// ---------------------------------------------------------------------------
// Running cases

struct RunResult {
    const CaseSpec* spec = nullptr;
    RunSetup setup;
    Snapshot snapshot;
    long steps = 0;
    long fallbacks = 0;
    double wall_seconds = 0.0;
    std::optional<ErrorNorms> errors;
    KeyValues manifest;
};

struct RunOptions {
    /// Directory for the final snapshot, the manifest and periodic snapshots; empty for none.
    std::string out_dir;
    /// Write an extra snapshot every this much simulated time (0 for none).
    double snapshot_interval = 0.0;
};

namespace harness_detail {

template <int Dim>
RunResult run(const CaseSpec& c, const RunSetup& s, const RunOptions& opt) {
    Mesh<Dim> mesh;
    if constexpr (Dim == 1) mesh = Mesh<1>(s.nx, c.x0, c.x1);
    else mesh = Mesh<2>(s.nx, s.ny, c.x0, c.x1, c.y0, c.y1);
    const auto start = std::chrono::steady_clock::now();
    Solver<Dim> solver(initial_field(mesh, c.initial, s.sampling), s.config);
    const std::filesystem::path out(opt.out_dir);
    if (!opt.out_dir.empty()) std::filesystem::create_directories(out);
    int written = 0;
    auto hook = [&](const Solver<Dim>& sv) {
        if (opt.out_dir.empty() || opt.snapshot_interval <= 0.0) return;
        while (sv.field().t >= (written + 1) * opt.snapshot_interval && sv.field().t < s.config.t_end) {
            ++written;
            char name[64];
            std::snprintf(name, sizeof name, "%s_%04d.csv", c.name.c_str(), written);
            write_csv(out / name, make_snapshot(sv.field()));
        }
    };
    solver.run(hook);
    RunResult res;
    res.spec = &c;
    res.setup = s;
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    res.steps = solver.field().step;
    res.fallbacks = solver.fallbacks();
    res.snapshot = make_snapshot(solver.field());
    res.snapshot.meta.emplace_back("case", c.name);
    res.snapshot.meta.emplace_back("flux", to_string(s.config.flux));
    if (const Profile ref = reference_at(c, solver.field().t))
        // Riemann references are discontinuous and always compared at cell centres
        res.errors = error_norms(solver.field(), ref,
                                 c.reference == ReferenceKind::analytic_advection ? s.sampling : Sampling::point);
    res.manifest = manifest_entries(c, s);
    res.manifest["steps"] = std::to_string(res.steps);
    res.manifest["fallbacks"] = std::to_string(res.fallbacks);
    res.manifest["wall_seconds"] = format_double(res.wall_seconds);
    res.manifest["final_time"] = format_double(solver.field().t);
    if (res.errors) {
        res.manifest["l1_error"] = format_double(res.errors->l1);
        res.manifest["linf_error"] = format_double(res.errors->linf);
    }
    if (!opt.out_dir.empty()) {
        write_csv(out / (c.name + ".csv"), res.snapshot);
        std::ofstream mf(out / (c.name + ".manifest"));
        write_key_values(mf, res.manifest);
    }
    return res;
}

}  // namespace harness_detail

inline RunResult run_case(const CaseSpec& c, const Overrides& o = {}, const RunOptions& opt = {}) {
    const RunSetup s = resolve(c, o);
    return c.dim == 1 ? harness_detail::run<1>(c, s, opt) : harness_detail::run<2>(c, s, opt);
}

inline RunResult run_case(const std::string& name, const Overrides& o = {}, const RunOptions& opt = {}) {
    return run_case(find_case(name), o, opt);
}

struct ConvergenceRow {
    int N = 0;
    double l1_error = 0.0;
    std::optional<double> l1_order;
    double linf_error = 0.0;
    std::optional<double> linf_order;
    double wall_seconds = 0.0;
};

/// Errors on a sequence of meshes (N cells per direction) and the observed orders
/// log2(e_prev / e) between successive doublings.
inline std::vector<ConvergenceRow> convergence_table(const CaseSpec& c, Overrides o, const std::vector<int>& meshes) {
    if (c.reference == ReferenceKind::none) throw DomainError("case '" + c.name + "' has no reference solution");
    std::vector<ConvergenceRow> rows;
    for (int n : meshes) {
        o.nx = n;
        o.ny = n;
        const RunResult r = run_case(c, o);
        ConvergenceRow row;
        row.N = n;
        row.l1_error = r.errors->l1;
        row.linf_error = r.errors->linf;
        row.wall_seconds = r.wall_seconds;
        if (!rows.empty()) {
            const auto& prev = rows.back();
            const double ratio = std::log2(static_cast<double>(n) / prev.N);
            row.l1_order = std::log2(prev.l1_error / row.l1_error) / ratio;
            row.linf_order = std::log2(prev.linf_error / row.linf_error) / ratio;
        }
        rows.push_back(row);
    }
    return rows;
}

inline void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "N,l1_error,l1_order,linf_error,linf_order\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%s,%.17g,%s\n", r.N, r.l1_error,
                      r.l1_order ? format_double(*r.l1_order).c_str() : "", r.linf_error,
                      r.linf_order ? format_double(*r.linf_order).c_str() : "");
        os << buf;
    }
}

inline std::string format_order(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

inline void write_convergence_text(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%6s  %12s  %8s  %12s  %8s\n", "N", "l1 error", "order", "linf error", "order");
    os << buf;
    for (const auto& r : rows) {
        const std::string o1 = r.l1_order ? format_order(*r.l1_order) : "-";
        const std::string o2 = r.linf_order ? format_order(*r.linf_order) : "-";
        std::snprintf(buf, sizeof buf, "%6d  %12.4e  %8s  %12.4e  %8s\n", r.N, r.l1_error, o1.c_str(), r.linf_error,
                      o2.c_str());
        os << buf;
    }
}

}  // namespace srgk
