#include "pks/solver.hpp"

#include <cmath>

#include "kernel_common.hpp"
#include "pks/parallel.hpp"
#include "solver_internal.hpp"

namespace pks {

void Workspace::resize(const Grid& g) {
    const size_t n = g.size();
    if (mu.size() == n) return;
    mu.assign(n, 0);
    rho_new.assign(n, 0);
    lap.assign(n, 0);
    cx.assign(n, 0);
    cy.assign(n, 0);
    cell_buf.assign(n, 0);
    clip.assign(n, 0);
    fx.assign(static_cast<size_t>(g.nx + 1) * g.ny, 0);
    fy.assign(g.dim == 2 ? static_cast<size_t>(g.ny + 1) * g.nx : 0, 0);
}

double total_mass(const Field& rho, const Grid& g) { return pairwise_sum(rho) * g.cell_volume(); }

double auto_dt(const SimState& s, const SimParams& p, const Medium& md, const Potentials& pot) {
    Workspace ws;
    SimState copy = s;
    SimParams q = p;
    q.dt = 0;
    return step(copy, q, md, pot, ws).dt;
}

StepInfo step(SimState& s, const SimParams& p, const Medium& md, const Potentials& pot, Workspace& ws,
              const StepOptions& opt) {
    const Grid& g = md.grid;
    const auto& laws = pot.laws();
    const int nx = g.nx, ny = g.ny;
    const bool two_d = g.dim == 2;
    const bool cross = md.has_cross;
    const double kc = 1.0 / (p.epsilon * p.alpha0);
    const double kx = kc / g.dx, ky = kc / g.dy;
    const double idx = 1.0 / g.dx, idy = 1.0 / g.dy;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
    ws.resize(g);
    const double* rho = s.rho.data();
    const double* phi = s.phi.data();
    double* mu = ws.mu.data();
    const double mm1 = laws.f.m() - 1.0;

    double dmax = 0;
#pragma omp parallel for if (n > kOmpMinWork) reduction(max : dmax) schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        double fp = laws.f.df_fast(rho[k]);
        mu[k] = fp - phi[k];
        dmax = std::max(dmax, mm1 * fp);
        if (cross) {
            int i = static_cast<int>(k % nx), j = static_cast<int>(k / nx);
            ws.cx[k] = detail::centered(i > 0 ? phi[k - 1] : 0, phi[k], i + 1 < nx ? phi[k + 1] : 0, i == 0,
                                        i + 1 == nx, 0.5 * idx);
            ws.cy[k] = detail::centered(j > 0 ? phi[k - nx] : 0, phi[k], j + 1 < ny ? phi[k + nx] : 0, j == 0,
                                        j + 1 == ny, 0.5 * idy);
        }
    }

    // outflow rate per cell, same accumulation order as the face loop
    double rate_max = 0;
#pragma omp parallel for if (n > kOmpMinWork) reduction(max : rate_max) schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        int i = static_cast<int>(k % nx), j = static_cast<int>(k / nx);
        double r = 0;
        if (i > 0) {
            double d = mu[k] - mu[k - 1];
            if (d > 0) r += std::abs(d) * kx * idx;
        }
        if (i + 1 < nx) {
            double d = mu[k + 1] - mu[k];
            if (!(d > 0)) r += std::abs(d) * kx * idx;
        }
        if (two_d) {
            if (j > 0) {
                double d = mu[k] - mu[k - nx];
                if (d > 0) r += std::abs(d) * ky * idy;
            }
            if (j + 1 < ny) {
                double d = mu[k + nx] - mu[k];
                if (!(d > 0)) r += std::abs(d) * ky * idy;
            }
        }
        rate_max = std::max(rate_max, r);
    }

    StepInfo info;
    info.rho_rate = rate_max;
    info.dt = detail::select_dt(s.t, dmax, rate_max, p, md, opt);
    const double dt = info.dt;
    const double se = dt / (p.epsilon * p.epsilon);
    const bool want_d = opt.dissipation;
    double* rn = ws.rho_new.data();
    double* pn = ws.lap.data();
    double* buf = ws.cell_buf.data();
    double* buf2 = ws.fx.data();  // per-cell organism dissipation, reused scratch

    double* clip = ws.clip.data();
#pragma omp parallel for if (n > kOmpMinWork) schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        int i = static_cast<int>(k % nx), j = static_cast<int>(k / nx);
        double fL = i > 0 ? detail::rho_flux(mu[k - 1], mu[k], rho[k - 1], rho[k], kx) : 0.0;
        double fR = i + 1 < nx ? detail::rho_flux(mu[k], mu[k + 1], rho[k], rho[k + 1], kx) : 0.0;
        double div = (fR - fL) * idx;
        double lap = 0.0;
        if (i > 0) {
            double an = 0.5 * (md.a11[k - 1] + md.a11[k]);
            double at = cross ? 0.5 * (md.a12[k - 1] + md.a12[k]) : 0.0;
            double tL = cross ? ws.cy[k - 1] : 0.0, tR = cross ? ws.cy[k] : 0.0;
            lap -= detail::phi_flux(phi[k - 1], phi[k], an, at, tL, tR, idx) * idx;
        }
        if (i + 1 < nx) {
            double an = 0.5 * (md.a11[k] + md.a11[k + 1]);
            double at = cross ? 0.5 * (md.a12[k] + md.a12[k + 1]) : 0.0;
            double tL = cross ? ws.cy[k] : 0.0, tR = cross ? ws.cy[k + 1] : 0.0;
            lap += detail::phi_flux(phi[k], phi[k + 1], an, at, tL, tR, idx) * idx;
        }
        if (two_d) {
            double fB = j > 0 ? detail::rho_flux(mu[k - nx], mu[k], rho[k - nx], rho[k], ky) : 0.0;
            double fT = j + 1 < ny ? detail::rho_flux(mu[k], mu[k + nx], rho[k], rho[k + nx], ky) : 0.0;
            div += (fT - fB) * idy;
            if (j > 0) {
                double an = 0.5 * (md.a22[k - nx] + md.a22[k]);
                double at = cross ? 0.5 * (md.a12[k - nx] + md.a12[k]) : 0.0;
                double tB = cross ? ws.cx[k - nx] : 0.0, tT = cross ? ws.cx[k] : 0.0;
                lap -= detail::phi_flux(phi[k - nx], phi[k], an, at, tB, tT, idy) * idy;
            }
            if (j + 1 < ny) {
                double an = 0.5 * (md.a22[k] + md.a22[k + nx]);
                double at = cross ? 0.5 * (md.a12[k] + md.a12[k + nx]) : 0.0;
                double tB = cross ? ws.cx[k] : 0.0, tT = cross ? ws.cx[k + nx] : 0.0;
                lap += detail::phi_flux(phi[k], phi[k + nx], an, at, tB, tT, idy) * idy;
            }
        }
        double r = rho[k] - dt * div;
        clip[k] = r < 0 ? -r : 0.0;
        if (r < 0) r = 0;
        rn[k] = r;
        double rhs = phi[k] + dt * lap + se * r;
        double v = detail::solve_reaction(rhs, se * md.c[k], laws.g, phi[k]);
        pn[k] = v;
        if (want_d) {
            buf[k] = (v - phi[k]) * (v - phi[k]);
            // organism part from the right and top faces of this cell
            double e = 0;
            if (i + 1 < nx) {
                double dmu = mu[k + 1] - mu[k];
                double up = dmu > 0 ? rho[k + 1] : rho[k];
                double vel = kc * dmu * idx;
                e += up < 1e-12 ? 0.0 : up * vel * vel;
            }
            if (two_d && j + 1 < ny) {
                double dmu = mu[k + nx] - mu[k];
                double up = dmu > 0 ? rho[k + nx] : rho[k];
                double vel = kc * dmu * idy;
                e += up < 1e-12 ? 0.0 : up * vel * vel;
            }
            buf2[k] = e;
        }
    }
    info.clipped = pairwise_sum(ws.clip) * g.cell_volume();
    if (want_d) {
        double phi_d = p.epsilon * pairwise_sum(buf, g.size()) / (dt * dt) * g.cell_volume();
        info.dissipation = p.alpha0 * pairwise_sum(buf2, g.size()) * g.cell_volume() + phi_d;
    }

    if (s.mass <= 0) s.mass = total_mass(s.rho, g);
    s.rho.swap(ws.rho_new);
    s.phi.swap(ws.lap);
    s.t += dt;
    s.clipped_mass += info.clipped;
    detail::restore_mass(s, g);
    return info;
}

RunResult run(SimState& s, const SimParams& p, const Medium& md, const Potentials& pot, const StepObserver& obs,
              bool want_dissipation) {
    RunResult res;
    Workspace ws;
    s.mass = total_mass(s.rho, md.grid);
    res.snapshots.push_back({0, s.t, s.rho, s.phi});
    StepOptions opt;
    opt.dissipation = want_dissipation;
    opt.t_stop = p.t_end;
    long k = 0;
    const double t_end = p.t_end;
    while (s.t < t_end && t_end - s.t > 1e-14 * std::max(1.0, t_end)) {
        StepInfo info = step(s, p, md, pot, ws, opt);
        ++k;
        if (want_dissipation) res.step_dissipation.push_back(info.dissipation);
        if (obs) obs(s, info, k);
        if (p.output_every > 0 && k % p.output_every == 0) res.snapshots.push_back({k, s.t, s.rho, s.phi});
    }
    if (res.snapshots.back().step != k) res.snapshots.push_back({k, s.t, s.rho, s.phi});
    res.steps = k;
    res.clipped_mass = s.clipped_mass;
    return res;
}

} // namespace pks
