// Command-line driver: run benchmark cases, convergence studies and exact Riemann solutions.

#include "srgk/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace srgk;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Primitive<1> parse_state(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(std::stod(tok));
        } catch (const std::logic_error&) {
            throw UsageError("bad number '" + tok + "' in state '" + s + "'");
        }
    }
    if (v.size() != 3) throw UsageError("state must be rho,u,p: '" + s + "'");
    return {v[0], {v[1]}, v[2]};
}

std::vector<int> parse_meshes(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::logic_error&) {
            throw UsageError("bad mesh size '" + tok + "'");
        }
    }
    if (out.empty()) throw UsageError("empty mesh list");
    return out;
}

// Flags given on the command line, stored as key=value so they layer over a config file.
struct Flags {
    std::string config, case_name, out, flux, limiter, reconstruct, sampling;
    int nx = 0, ny = 0;
    double cfl = 0.0, tend = -1.0, snapshot_every = 0.0;

    KeyValues merged() const {
        KeyValues kv;
        if (!config.empty()) {
            std::ifstream is(config);
            if (!is) throw UsageError("cannot read config file " + config);
            kv = read_key_values(is);
        }
        auto set = [&](const char* k, const std::string& v) {
            if (!v.empty()) kv[k] = v;
        };
        set("case", case_name);
        set("out", out);
        set("flux", flux);
        set("limiter", limiter);
        set("reconstruct", reconstruct);
        set("sampling", sampling);
        if (nx > 0) kv["nx"] = std::to_string(nx);
        if (ny > 0) kv["ny"] = std::to_string(ny);
        if (cfl > 0.0) kv["cfl"] = format_double(cfl);
        if (tend >= 0.0) kv["tend"] = format_double(tend);
        if (!kv.count("case")) throw UsageError("no case given (--case or case= in the config file)");
        return kv;
    }
};

void add_run_flags(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config, "key=value file; flags given here override it");
    app->add_option("--case", f.case_name, "case name (see list-cases)");
    app->add_option("--nx", f.nx, "cells in x");
    app->add_option("--ny", f.ny, "cells in y");
    app->add_option("--flux", f.flux, "sbgk | bgk1d | kfvs | llf");
    app->add_option("--limiter", f.limiter, "vanleer | minmod | none");
    app->add_option("--reconstruct", f.reconstruct, "primitive | characteristic | conservative");
    app->add_option("--sampling", f.sampling, "point | cell_average (initial data and smooth references)");
    app->add_option("--cfl", f.cfl, "CFL number");
    app->add_option("--tend", f.tend, "final time");
}

void print_errors(const RunResult& r) {
    if (!r.errors) return;
    std::printf("l1(rho)=%.6e linf(rho)=%.6e\n", r.errors->l1, r.errors->linf);
}

int cmd_run(const Flags& f) {
    const KeyValues kv = f.merged();
    Overrides o;
    o.merge(kv);
    RunOptions opt;
    opt.out_dir = kv.count("out") ? kv.at("out") : "srgk_out";
    opt.snapshot_interval = f.snapshot_every;
    const RunResult r = run_case(kv.at("case"), o, opt);
    std::printf("case=%s nx=%d ny=%d flux=%s steps=%ld fallbacks=%ld wall=%.3fs\n", kv.at("case").c_str(),
                r.setup.nx, r.setup.ny, to_string(r.setup.config.flux).c_str(), r.steps, r.fallbacks,
                r.wall_seconds);
    print_errors(r);
    std::printf("output: %s\n", opt.out_dir.c_str());
    return 0;
}

int cmd_convergence(const Flags& f, const std::string& meshes) {
    const KeyValues kv = f.merged();
    Overrides o;
    o.merge(kv);
    const auto rows = convergence_table(find_case(kv.at("case")), o, parse_meshes(meshes));
    write_convergence_text(std::cout, rows);
    if (kv.count("out")) {
        std::filesystem::create_directories(kv.at("out"));
        const auto path = std::filesystem::path(kv.at("out")) /
                          (kv.at("case") + "_" + to_string(o.flux.value_or(FluxKind::sbgk)) + "_convergence.csv");
        std::ofstream os(path);
        write_convergence_csv(os, rows);
        std::printf("output: %s\n", path.string().c_str());
    }
    return 0;
}

int cmd_riemann(const std::string& left, const std::string& right, double t, int samples, double x0, double xmin,
                double xmax, const std::string& out) {
    if (samples < 1) throw UsageError("--samples must be positive");
    if (!(t > 0.0)) throw UsageError("--time must be positive");
    if (!(xmax > xmin)) throw UsageError("--xmax must exceed --xmin");
    const RiemannFan fan = solve_star(parse_state(left), parse_state(right));
    std::vector<double> x(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) x[static_cast<std::size_t>(k)] = xmin + (k + 0.5) * (xmax - xmin) / samples;
    const auto s = fan.sample(x, t, x0);
    Snapshot snap;
    snap.nx = samples;
    snap.meta = {{"t", format_double(t)},
                 {"p_star", format_double(fan.p_star)},
                 {"u_star", format_double(fan.u_star)},
                 {"rho_star_left", format_double(fan.rho_star_L)},
                 {"rho_star_right", format_double(fan.rho_star_R)},
                 {"left_wave", fan.left_wave.kind == WaveKind::shock ? "shock" : "rarefaction"},
                 {"right_wave", fan.right_wave.kind == WaveKind::shock ? "shock" : "rarefaction"}};
    for (std::size_t k = 0; k < x.size(); ++k) {
        snap.x.push_back(x[k]);
        snap.rho.push_back(s[k].rho);
        snap.u1.push_back(s[k].u[0]);
        snap.p.push_back(s[k].p);
    }
    if (out.empty()) {
        write_csv(std::cout, snap);
    } else {
        write_csv(std::filesystem::path(out), snap);
        std::printf("p*=%.12g u*=%.12g output: %s\n", fan.p_star, fan.u_star, out.c_str());
    }
    return 0;
}

int cmd_list() {
    for (const auto& c : case_registry()) {
        const std::string mesh = c.dim == 2 ? std::to_string(c.nx) + "x" + std::to_string(c.ny) : std::to_string(c.nx);
        std::printf("%-10s %dD  %-9s t=%-5g %s\n", c.name.c_str(), c.dim, mesh.c_str(), c.t_end, c.title.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relativistic gas-kinetic finite-volume solver"};
    app.require_subcommand(1);

    Flags run_flags;
    auto* run = app.add_subcommand("run", "run a benchmark case");
    add_run_flags(run, run_flags);
    run->add_option("--out", run_flags.out, "output directory (default srgk_out)");
    run->add_option("--snapshot-every", run_flags.snapshot_every, "extra snapshots every this much time");

    Flags conv_flags;
    std::string meshes = "25,50,100,200,400";
    auto* conv = app.add_subcommand("convergence", "errors and orders on a mesh sequence");
    add_run_flags(conv, conv_flags);
    conv->add_option("--meshes", meshes, "comma-separated cell counts");
    conv->add_option("--out", conv_flags.out, "directory for the CSV table");

    std::string left, right, rout;
    double time = 0.0, x0 = 0.5, xmin = 0.0, xmax = 1.0;
    int samples = 200;
    auto* rs = app.add_subcommand("riemann", "sample the exact solution of a 1D Riemann problem");
    rs->add_option("--left", left, "left state rho,u,p")->required();
    rs->add_option("--right", right, "right state rho,u,p")->required();
    rs->add_option("--time", time, "sampling time")->required();
    rs->add_option("--samples", samples, "number of uniform sample points");
    rs->add_option("--x0", x0, "initial discontinuity position");
    rs->add_option("--xmin", xmin, "left end of the sampled interval");
    rs->add_option("--xmax", xmax, "right end of the sampled interval");
    rs->add_option("--out", rout, "CSV file (default stdout)");

    auto* list = app.add_subcommand("list-cases", "print the registered cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run) return cmd_run(run_flags);
        if (*conv) return cmd_convergence(conv_flags, meshes);
        if (*rs) return cmd_riemann(left, right, time, samples, x0, xmin, xmax, rout);
        if (*list) return cmd_list();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
