#pragma once
/// @file solver.hpp
/// @brief Finite-volume driver on uniform 1D and 2D meshes.
///
/// Cell averages are stored with two ghost layers. Each step reconstructs a
/// limited linear polynomial per cell and direction, evaluates the interface
/// fluxes and applies the unsplit conservative update. The BGK fluxes are
/// already time averages over the step, so a single stage gives second order
/// in time. KFVS and LLF use the two-stage TVD Runge-Kutta method: free
/// transport over a whole step adds a viscosity proportional to dt.

#include "srgk/core.hpp"
#include "srgk/eos.hpp"
#include "srgk/flux.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace srgk {

enum class Limiter { vanleer, minmod, none };
enum class Reconstruction { primitive, characteristic, conservative };
enum class BoundaryKind { periodic, outflow, reflecting, jet_inflow };

inline std::string to_string(Limiter l) {
    switch (l) {
        case Limiter::vanleer: return "vanleer";
        case Limiter::minmod: return "minmod";
        case Limiter::none: return "none";
    }
    return "?";
}
inline std::string to_string(Reconstruction r) {
    switch (r) {
        case Reconstruction::primitive: return "primitive";
        case Reconstruction::characteristic: return "characteristic";
        case Reconstruction::conservative: return "conservative";
    }
    return "?";
}
inline std::string to_string(BoundaryKind b) {
    switch (b) {
        case BoundaryKind::periodic: return "periodic";
        case BoundaryKind::outflow: return "outflow";
        case BoundaryKind::reflecting: return "reflecting";
        case BoundaryKind::jet_inflow: return "jet_inflow";
    }
    return "?";
}

inline Limiter limiter_from_string(const std::string& s) {
    if (s == "vanleer") return Limiter::vanleer;
    if (s == "minmod") return Limiter::minmod;
    if (s == "none") return Limiter::none;
    throw DomainError("unknown limiter '" + s + "'");
}
inline Reconstruction reconstruction_from_string(const std::string& s) {
    if (s == "primitive") return Reconstruction::primitive;
    if (s == "characteristic") return Reconstruction::characteristic;
    if (s == "conservative") return Reconstruction::conservative;
    throw DomainError("unknown reconstruction '" + s + "'");
}
inline BoundaryKind boundary_from_string(const std::string& s) {
    if (s == "periodic") return BoundaryKind::periodic;
    if (s == "outflow") return BoundaryKind::outflow;
    if (s == "reflecting") return BoundaryKind::reflecting;
    if (s == "jet_inflow") return BoundaryKind::jet_inflow;
    throw DomainError("unknown boundary '" + s + "'");
}

/// Limited slope from the backward and forward differences.
inline double limited_slope(Limiter l, double a, double b) {
    switch (l) {
        case Limiter::vanleer: return a * b > 0.0 ? 2.0 * a * b / (a + b) : 0.0;
        case Limiter::minmod: return a * b > 0.0 ? (a > 0.0 ? std::min(a, b) : std::max(a, b)) : 0.0;
        case Limiter::none: return 0.5 * (a + b);
    }
    return 0.0;
}

/// Inflow strip on the low-x side: cells with |y - center| <= half_width get the beam
/// state, the rest of that side reflects.
struct JetNozzle {
    Primitive<2> beam{0.01, {0.99, 0.0}, 0.1};
    double center = 0.0;
    double half_width = 0.5;
};

/// Boundary kinds in the order x-low, x-high, y-low, y-high.
struct Boundaries {
    std::array<BoundaryKind, 4> side{BoundaryKind::outflow, BoundaryKind::outflow, BoundaryKind::outflow,
                                     BoundaryKind::outflow};
    JetNozzle jet;

    static Boundaries all(BoundaryKind k) {
        Boundaries b;
        b.side.fill(k);
        return b;
    }
};

struct RunConfig {
    FluxKind flux = FluxKind::sbgk;
    double cfl = 0.4;
    CollisionTimeParams collision;
    Limiter limiter = Limiter::vanleer;
    Reconstruction reconstruct_on = Reconstruction::primitive;
    Boundaries boundaries;
    double t_end = 0.0;
    long max_steps = 100'000'000;

    void validate() const {
        if (!(cfl > 0.0 && cfl < 1.0)) throw DomainError("cfl must lie in (0, 1)");
        if (!(t_end >= 0.0)) throw DomainError("t_end must be non-negative");
    }
};

template <int Dim>
struct Mesh {
    int nx = 1, ny = 1;
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

    Mesh() = default;
    Mesh(int nx_, double a, double b) requires(Dim == 1) : nx(nx_), x0(a), x1(b) { check(); }
    Mesh(int nx_, int ny_, double a, double b, double c, double d) requires(Dim == 2)
        : nx(nx_), ny(ny_), x0(a), x1(b), y0(c), y1(d) {
        check();
    }

    double dx() const { return (x1 - x0) / nx; }
    double dy() const { return Dim == 2 ? (y1 - y0) / ny : 1.0; }
    double xc(int i) const { return x0 + (i + 0.5) * dx(); }
    double yc(int j) const { return Dim == 2 ? y0 + (j + 0.5) * dy() : 0.0; }
    double cell_volume() const { return dx() * dy(); }
    int cells() const { return nx * ny; }

  private:
    void check() const {
        if (nx < 1 || ny < 1 || !(x1 > x0) || (Dim == 2 && !(y1 > y0))) throw DomainError("mesh: empty domain");
    }
};

/// Cell averages of the conserved variables with ghost layers.
template <int Dim>
class Field {
  public:
    static constexpr int kGhost = 2;
    static constexpr int kGhostY = Dim == 2 ? kGhost : 0;

    Field() = default;
    explicit Field(const Mesh<Dim>& m)
        : mesh_(m), sx_(m.nx + 2 * kGhost), data_(static_cast<std::size_t>(sx_ * (m.ny + 2 * kGhostY))) {}

    const Mesh<Dim>& mesh() const { return mesh_; }
    int index(int i, int j = 0) const { return (j + kGhostY) * sx_ + (i + kGhost); }
    /// Offset between neighbouring cells along axis 1 or 2.
    int stride(int axis) const { return axis == 1 ? 1 : sx_; }
    std::size_t storage() const { return data_.size(); }

    StateVec<Dim>& operator()(int i, int j = 0) { return data_[static_cast<std::size_t>(index(i, j))]; }
    const StateVec<Dim>& operator()(int i, int j = 0) const { return data_[static_cast<std::size_t>(index(i, j))]; }
    StateVec<Dim>& at(int k) { return data_[static_cast<std::size_t>(k)]; }
    const StateVec<Dim>& at(int k) const { return data_[static_cast<std::size_t>(k)]; }

    /// Sum of cell averages times cell volume over the interior.
    StateVec<Dim> total() const {
        StateVec<Dim> s = StateVec<Dim>::Zero();
        for (int j = 0; j < mesh_.ny; ++j)
            for (int i = 0; i < mesh_.nx; ++i) s += (*this)(i, j);
        return s * mesh_.cell_volume();
    }

    double t = 0.0;
    long step = 0;

  private:
    Mesh<Dim> mesh_;
    int sx_ = 0;
    std::vector<StateVec<Dim>> data_;
};

/// Wrap a library error with a location message, keeping its type. `where` is
/// only called on failure.
template <class Where, class Fn>
auto with_location(Where&& where, Fn&& fn) -> decltype(fn()) {
    auto tag = [&](const Error& e) { return std::string(e.what()) + " " + std::string(where()); };
    try {
        return fn();
    } catch (const NonPhysicalState& e) {
        throw NonPhysicalState(tag(e));
    } catch (const ConvergenceFailure& e) {
        throw ConvergenceFailure(tag(e));
    } catch (const QuadratureFailure& e) {
        throw QuadratureFailure(tag(e));
    } catch (const SingularMatrix& e) {
        throw SingularMatrix(tag(e));
    } catch (const BracketFailure& e) {
        throw BracketFailure(tag(e));
    }
}

namespace solver_detail {

/// Right eigenvectors of dF_axis/dW at v, from finite-difference Jacobians in the
/// primitive variables: A = (dF/dV)(dW/dV)^{-1}.
template <int Dim>
Eigen::Matrix<double, Dim + 2, Dim + 2> flux_eigenvectors(const Primitive<Dim>& v, int axis) {
    using Mat = Eigen::Matrix<double, Dim + 2, Dim + 2>;
    Mat JF, JW;
    const StateVec<Dim> x = v.as_vector();
    for (int k = 0; k < Dim + 2; ++k) {
        const double h = 1e-6 * std::max(std::abs(x(k)), k >= 1 && k <= Dim ? 1.0 : std::abs(x(k)));
        StateVec<Dim> xp = x, xm = x;
        xp(k) += h;
        xm(k) -= h;
        const auto vp = Primitive<Dim>::from_vector(xp), vm = Primitive<Dim>::from_vector(xm);
        JF.col(k) = (physical_flux(vp, axis) - physical_flux(vm, axis)) / (2.0 * h);
        JW.col(k) = (to_conserved(vp) - to_conserved(vm)) / (2.0 * h);
    }
    const Mat A = JF * JW.inverse();
    Eigen::EigenSolver<Mat> es(A);
    return es.eigenvectors().real();
}

}  // namespace solver_detail

/// Face values and conserved-variable slope of one cell along one axis.
template <int Dim>
struct CellReconstruction {
    Primitive<Dim> minus, plus;
    StateVec<Dim> slope = StateVec<Dim>::Zero();
};

template <int Dim>
class Solver {
  public:
    using Vec = StateVec<Dim>;
    using Prim = Primitive<Dim>;

    Solver(Field<Dim> field, RunConfig cfg) : w_(std::move(field)), cfg_(std::move(cfg)) {
        cfg_.validate();
        if (Dim == 1 && (cfg_.boundaries.side[0] == BoundaryKind::jet_inflow ||
                         cfg_.boundaries.side[1] == BoundaryKind::jet_inflow))
            throw DomainError("jet inflow needs a 2D mesh");
        for (int k = 1; k < 4; ++k)
            if (cfg_.boundaries.side[k] == BoundaryKind::jet_inflow)
                throw DomainError("jet inflow is supported on the x-low side only");
        if (Dim == 2 && cfg_.flux == FluxKind::bgk1d) throw DomainError("bgk1d flux is one-dimensional only");
        const auto n = w_.storage();
        v_.assign(n, Prim{});
        for (int a = 0; a < Dim; ++a) {
            rec_[a].assign(n, {});
            flux_[a].assign(n, Vec::Zero());
        }
        merged_.assign(n, {});
        update_primitives(w_);
    }

    const Field<Dim>& field() const { return w_; }
    const RunConfig& config() const { return cfg_; }
    long fallbacks() const { return fallbacks_; }

    /// Primitive variables of interior cell (i, j).
    const Prim& primitive(int i, int j = 0) const { return v_[static_cast<std::size_t>(w_.index(i, j))]; }

    /// dt = cfl min(dx, dy) / max spectral radius over interior cells and directions.
    double time_step() const {
        const auto& m = w_.mesh();
        double r = 0.0;
        for (int j = 0; j < m.ny; ++j)
            for (int i = 0; i < m.nx; ++i) r = std::max(r, spectral_radius(primitive(i, j)));
        const double h = Dim == 2 ? std::min(m.dx(), m.dy()) : m.dx();
        return cfg_.cfl * h / r;
    }

    /// One step of size dt.
    void step(double dt) {
        if (!(dt > 0.0)) throw DomainError("step: dt must be positive");
        if (method_of_lines()) {
            step_rk2(dt);
        } else {
            Field<Dim> next = w_;
            apply_rhs(w_, dt, next);
            update_primitives(next);
            w_ = std::move(next);
        }
        w_.t += dt;
        ++w_.step;
    }

    /// March to t_end; the last step is clipped to land on it exactly.
    void run(const std::function<void(const Solver&)>& on_step = {}) {
        while (w_.t < cfg_.t_end) {
            if (w_.step >= cfg_.max_steps) throw ConvergenceFailure("run: step budget exhausted");
            double dt = time_step();
            if (w_.t + dt >= cfg_.t_end) dt = cfg_.t_end - w_.t;
            step(dt);
            if (w_.t > cfg_.t_end * (1.0 - 1e-15)) w_.t = cfg_.t_end;
            if (on_step) on_step(*this);
        }
    }

    /// Fill ghost cells of `f` (and of the primitive cache) from its interior.
    void fill_ghosts(Field<Dim>& f) {
        const auto& m = f.mesh();
        const auto& bc = cfg_.boundaries;
        const int g = Field<Dim>::kGhost;
        // y sides first over the interior columns, then x sides over every row so corners are filled
        if constexpr (Dim == 2) {
            for (int i = 0; i < m.nx; ++i)
                for (int k = 1; k <= g; ++k) {
                    ghost(f, bc.side[2], f.index(i, -k), f.index(i, k - 1), f.index(i, m.ny - k), 2, 0.0);
                    ghost(f, bc.side[3], f.index(i, m.ny - 1 + k), f.index(i, m.ny - k), f.index(i, k - 1), 2, 0.0);
                }
        }
        const int jg = Field<Dim>::kGhostY;
        for (int j = -jg; j < m.ny + jg; ++j)
            for (int k = 1; k <= g; ++k) {
                ghost(f, bc.side[0], f.index(-k, j), f.index(k - 1, j), f.index(m.nx - k, j), 1, m.yc(j));
                ghost(f, bc.side[1], f.index(m.nx - 1 + k, j), f.index(m.nx - k, j), f.index(k - 1, j), 1, m.yc(j));
            }
    }

    /// LLF and KFVS are semi-discrete fluxes advanced with two-stage Runge-Kutta;
    /// the other kinetic fluxes already carry the time evolution over the step.
    bool method_of_lines() const { return cfg_.flux == FluxKind::llf || cfg_.flux == FluxKind::kfvs; }

  private:
    /// Ghost `dst` from its mirror cell (reflecting, outflow) or periodic image.
    void ghost(Field<Dim>& f, BoundaryKind kind, int dst, int mirror, int image, int axis, double y) {
        const std::size_t d = static_cast<std::size_t>(dst);
        switch (kind) {
            case BoundaryKind::periodic:
                f.at(dst) = f.at(image);
                v_[d] = v_[static_cast<std::size_t>(image)];
                return;
            case BoundaryKind::outflow: {
                // zero gradient: copy the interior cell adjacent to the boundary
                const int first = outflow_source(f, dst, axis);
                f.at(dst) = f.at(first);
                v_[d] = v_[static_cast<std::size_t>(first)];
                return;
            }
            case BoundaryKind::jet_inflow:
                if constexpr (Dim == 2) {
                    const auto& jet = cfg_.boundaries.jet;
                    if (std::abs(y - jet.center) <= jet.half_width) {
                        v_[d] = jet.beam;
                        f.at(dst) = to_conserved(jet.beam);
                        return;
                    }
                }
                [[fallthrough]];
            case BoundaryKind::reflecting:
                f.at(dst) = f.at(mirror);
                f.at(dst)(axis) = -f.at(dst)(axis);
                v_[d] = v_[static_cast<std::size_t>(mirror)];
                v_[d].u[axis - 1] = -v_[d].u[axis - 1];
                return;
        }
    }

    /// Interior cell adjacent to the boundary on the side of ghost `dst`.
    int outflow_source(const Field<Dim>& f, int dst, int axis) const {
        const auto& m = f.mesh();
        const int s = f.stride(2);
        const int g = Field<Dim>::kGhost, gy = Field<Dim>::kGhostY;
        int i = dst % s - g, j = dst / s - gy;
        if (axis == 1) i = std::clamp(i, 0, m.nx - 1);
        else j = std::clamp(j, 0, m.ny - 1);
        return f.index(i, j);
    }

    /// Recompute primitives of the interior; admissibility monitor.
    void update_primitives(const Field<Dim>& f) {
        const auto& m = f.mesh();
        for (int j = 0; j < m.ny; ++j)
            for (int i = 0; i < m.nx; ++i) {
                const int k = f.index(i, j);
                v_[static_cast<std::size_t>(k)] =
                    with_location([&] { return where(f, i, j); }, [&] { return to_primitive<Dim>(f.at(k)); });
            }
    }

    static std::string where(const Field<Dim>& f, int i, int j) {
        return "at cell (" + std::to_string(i) + (Dim == 2 ? "," + std::to_string(j) : std::string()) +
               ") t=" + std::to_string(f.t);
    }

    // ------------------------------------------------------------------
    // Reconstruction

    CellReconstruction<Dim> reconstruct_cell(const Field<Dim>& f, int k, int axis) {
        const int s = f.stride(axis);
        const double h = axis == 1 ? f.mesh().dx() : f.mesh().dy();
        const std::size_t c = static_cast<std::size_t>(k);
        CellReconstruction<Dim> r;
        const Prim& V = v_[c];
        bool ok = true;
        switch (cfg_.reconstruct_on) {
            case Reconstruction::primitive: {
                const Vec x = V.as_vector(), xm = v_[c - s].as_vector(), xp = v_[c + s].as_vector();
                Vec d;
                for (int q = 0; q < Dim + 2; ++q) d(q) = limited_slope(cfg_.limiter, x(q) - xm(q), xp(q) - x(q));
                r.minus = Prim::from_vector(x - 0.5 * d);
                r.plus = Prim::from_vector(x + 0.5 * d);
                ok = admissible(r.minus) && admissible(r.plus);
                break;
            }
            case Reconstruction::conservative:
            case Reconstruction::characteristic: {
                const Vec W = f.at(k), dm = W - f.at(k - s), dp = f.at(k + s) - W;
                Vec d;
                if (cfg_.reconstruct_on == Reconstruction::conservative) {
                    for (int q = 0; q < Dim + 2; ++q) d(q) = limited_slope(cfg_.limiter, dm(q), dp(q));
                } else {
                    const auto R = solver_detail::flux_eigenvectors(V, axis);
                    const auto lu = R.fullPivLu();
                    const Vec am = lu.solve(dm), ap = lu.solve(dp);
                    Vec da;
                    for (int q = 0; q < Dim + 2; ++q) da(q) = limited_slope(cfg_.limiter, am(q), ap(q));
                    d = R * da;
                }
                try {
                    r.minus = to_primitive<Dim>(W - 0.5 * d);
                    r.plus = to_primitive<Dim>(W + 0.5 * d);
                } catch (const Error&) {
                    ok = false;
                }
                break;
            }
        }
        if (ok) {
            try {
                r.slope = (to_conserved(r.plus) - to_conserved(r.minus)) / h;
            } catch (const NonPhysicalState&) {
                ok = false;
            }
        }
        if (!ok) {
            ++fallbacks_;
            r.minus = r.plus = V;
            r.slope.setZero();
        }
        return r;
    }

    // ------------------------------------------------------------------
    // Fluxes and update

    /// Ranges: cells reconstructed along `axis` and the interfaces evaluated.
    struct Range {
        int i0, i1, j0, j1;
    };

    /// out = W - dt * divergence of the fluxes built from `f` (ghosts of f are filled here).
    void apply_rhs(Field<Dim>& f, double dt, Field<Dim>& out) {
        fill_ghosts(f);
        const auto& m = f.mesh();
        const bool two_pass = Dim == 2 && cfg_.flux == FluxKind::sbgk;
        const int jg = two_pass ? 1 : 0;
        for (int axis = 1; axis <= Dim; ++axis) {
            // with the two-pass sBGK the tangential neighbours of every interface are needed too
            const int ei = axis == 2 && two_pass ? 1 : 0, ej = axis == 1 && two_pass ? 1 : 0;
            const Range cells = axis == 1 ? Range{-1, m.nx + 1, -ej, m.ny + ej} : Range{-ei, m.nx + ei, -1, m.ny + 1};
            auto& rec = rec_[axis - 1];
            for (int j = cells.j0; j < cells.j1; ++j)
                for (int i = cells.i0; i < cells.i1; ++i) {
                    const int k = f.index(i, j);
                    rec[static_cast<std::size_t>(k)] =
                        with_location([&] { return where(f, i, j); }, [&] { return reconstruct_cell(f, k, axis); });
                }
            interface_fluxes(f, axis, dt, jg);
        }
        for (int j = 0; j < m.ny; ++j)
            for (int i = 0; i < m.nx; ++i) {
                const int k = f.index(i, j);
                const std::size_t c = static_cast<std::size_t>(k);
                Vec dw = (flux_[0][c] - flux_[0][c - 1]) / m.dx();
                if constexpr (Dim == 2) {
                    const std::size_t sy = static_cast<std::size_t>(f.stride(2));
                    dw += (flux_[1][c] - flux_[1][c - sy]) / m.dy();
                }
                out.at(k) = f.at(k) - dt * dw;
            }
    }

    /// Fluxes through the interfaces between cell k and k + e_axis, stored at k.
    void interface_fluxes(const Field<Dim>& f, int axis, double dt, int tangential_pad) {
        const auto& m = f.mesh();
        const int s = f.stride(axis);
        const double hn = axis == 1 ? m.dx() : m.dy();
        const double ht = axis == 1 ? m.dy() : m.dx();
        const auto& rec = rec_[axis - 1];
        auto& flux = flux_[axis - 1];
        const int tp = tangential_pad;
        // interface k + 1/2 for normal index -1 .. n-1
        const Range faces = axis == 1 ? Range{-1, m.nx, -tp, m.ny + tp} : Range{-tp, m.nx + tp, -1, m.ny};
        auto data_at = [&](int k) {
            const std::size_t a = static_cast<std::size_t>(k), b = static_cast<std::size_t>(k + s);
            InterfaceData<Dim> d;
            d.VL = swap_if(rec[a].plus, axis);
            d.VR = swap_if(rec[b].minus, axis);
            d.WxL = swap_if(rec[a].slope, axis);
            d.WxR = swap_if(rec[b].slope, axis);
            d.Wx0 = swap_if(Vec((f.at(k + s) - f.at(k)) / hn), axis);
            d.dt = method_of_lines() ? 0.0 : dt;
            d.dx_normal = hn;
            return d;
        };
        const bool two_pass = Dim == 2 && cfg_.flux == FluxKind::sbgk;
        if (two_pass) {
            for (int j = faces.j0; j < faces.j1; ++j)
                for (int i = faces.i0; i < faces.i1; ++i) {
                    const int k = f.index(i, j);
                    const auto d = data_at(k);
                    merged_[static_cast<std::size_t>(k)] =
                        with_location([&] { return where(f, i, j); }, [&] { return sbgk_merge(d.VL, d.VR); });
                }
        }
        const int st = f.stride(axis == 1 ? 2 : 1);
        const Range inner = axis == 1 ? Range{-1, m.nx, 0, m.ny} : Range{0, m.nx, -1, m.ny};
        for (int j = inner.j0; j < inner.j1; ++j)
            for (int i = inner.i0; i < inner.i1; ++i) {
                const int k = f.index(i, j);
                const std::size_t c = static_cast<std::size_t>(k);
                flux[c] = with_location([&] { return where(f, i, j); }, [&]() -> Vec {
                    const auto d = data_at(k);
                    if (two_pass) {
                        const auto& mg = merged_[c];
                        const Vec wt = (merged_[c + st].w0 - merged_[c - st].w0) / (2.0 * ht);
                        const double tau = collision_time(d.VL.p, d.VR.p, dt, cfg_.collision);
                        return swap_if(sbgk_finish(mg, d.Wx0, wt, dt, tau), axis);
                    }
                    if (cfg_.flux == FluxKind::llf) return swap_if(llf_flux(d.VL, d.VR), axis);
                    return swap_if(interface_flux(cfg_.flux, d, cfg_.collision), axis);
                });
            }
    }

    static Prim swap_if(const Prim& v, int axis) { return axis == 2 ? swap_axes(v) : v; }
    static Vec swap_if(const Vec& v, int axis) { return axis == 2 ? swap_axes<Dim>(v) : v; }

    void step_rk2(double dt) {
        // Heun: W1 = W + dt L(W), W^{n+1} = (W + W1 + dt L(W1)) / 2
        Field<Dim> w1 = w_;
        apply_rhs(w_, dt, w1);
        update_primitives(w1);
        Field<Dim> w2 = w1;
        apply_rhs(w1, dt, w2);
        const auto& m = w_.mesh();
        for (int j = 0; j < m.ny; ++j)
            for (int i = 0; i < m.nx; ++i) w2(i, j) = 0.5 * (w_(i, j) + w2(i, j));
        update_primitives(w2);
        const double t = w_.t;
        const long n = w_.step;
        w_ = std::move(w2);
        w_.t = t;
        w_.step = n;
    }

    Field<Dim> w_;
    RunConfig cfg_;
    std::vector<Prim> v_;
    std::array<std::vector<CellReconstruction<Dim>>, Dim> rec_;
    std::array<std::vector<Vec>, Dim> flux_;
    std::vector<MergedInterface<Dim>> merged_;
    long fallbacks_ = 0;
};

}  // namespace srgk
