// Face-loop kernel. Plain serial loops; the parallel kernel in solver.cpp
// is tested against this one.

#include <cmath>

#include "kernel_common.hpp"
#include "pks/parallel.hpp"
#include "pks/solver.hpp"
#include "solver_internal.hpp"

namespace pks {

StepInfo step_reference(SimState& s, const SimParams& p, const Medium& md, const Potentials& pot, Workspace& ws,
                        const StepOptions& opt) {
    const Grid& g = md.grid;
    const auto& laws = pot.laws();
    const int nx = g.nx, ny = g.ny;
    const bool two_d = g.dim == 2;
    const double kc = 1.0 / (p.epsilon * p.alpha0);
    const double kx = kc / g.dx, ky = kc / g.dy;
    const double idx = 1.0 / g.dx, idy = 1.0 / g.dy;
    const size_t n = g.size();
    ws.resize(g);

    double dmax = 0;
    for (size_t k = 0; k < n; ++k) {
        ws.mu[k] = laws.f.df_fast(s.rho[k]) - s.phi[k];
        dmax = std::max(dmax, (laws.f.m() - 1.0) * laws.f.df_fast(s.rho[k]));
    }

    // x faces: index j*(nx+1)+i is the face left of cell i
    for (int j = 0; j < ny; ++j) {
        ws.fx[j * (nx + 1)] = 0;
        ws.fx[j * (nx + 1) + nx] = 0;
        for (int i = 1; i < nx; ++i) {
            size_t L = g.idx(i - 1, j), R = g.idx(i, j);
            ws.fx[j * (nx + 1) + i] = detail::rho_flux(ws.mu[L], ws.mu[R], s.rho[L], s.rho[R], kx);
        }
    }
    if (two_d) {
        for (int i = 0; i < nx; ++i) {
            ws.fy[i] = 0;
            ws.fy[static_cast<size_t>(ny) * nx + i] = 0;
        }
        for (int j = 1; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                size_t B = g.idx(i, j - 1), T = g.idx(i, j);
                ws.fy[static_cast<size_t>(j) * nx + i] = detail::rho_flux(ws.mu[B], ws.mu[T], s.rho[B], s.rho[T], ky);
            }
    }

    // outflow rates
    std::vector<double> rate(n, 0.0);
    for (int j = 0; j < ny; ++j)
        for (int i = 1; i < nx; ++i) {
            size_t L = g.idx(i - 1, j), R = g.idx(i, j);
            double r = std::abs(ws.mu[R] - ws.mu[L]) * kx * idx;
            if (ws.mu[R] - ws.mu[L] > 0) rate[R] += r; else rate[L] += r;
        }
    if (two_d)
        for (int j = 1; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                size_t B = g.idx(i, j - 1), T = g.idx(i, j);
                double r = std::abs(ws.mu[T] - ws.mu[B]) * ky * idy;
                if (ws.mu[T] - ws.mu[B] > 0) rate[T] += r; else rate[B] += r;
            }
    double rate_max = 0;
    for (size_t k = 0; k < n; ++k) rate_max = std::max(rate_max, rate[k]);

    StepInfo info;
    info.rho_rate = rate_max;
    info.dt = detail::select_dt(s.t, dmax, rate_max, p, md, opt);
    const double dt = info.dt;

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            size_t k = g.idx(i, j);
            double fL = ws.fx[j * (nx + 1) + i], fR = ws.fx[j * (nx + 1) + i + 1];
            double div = (fR - fL) * idx;
            if (two_d) {
                double fB = ws.fy[static_cast<size_t>(j) * nx + i], fT = ws.fy[static_cast<size_t>(j + 1) * nx + i];
                div += (fT - fB) * idy;
            }
            ws.rho_new[k] = s.rho[k] - dt * div;
        }
    for (size_t k = 0; k < n; ++k) {
        ws.clip[k] = ws.rho_new[k] < 0 ? -ws.rho_new[k] : 0.0;
        if (ws.rho_new[k] < 0) ws.rho_new[k] = 0;
    }
    info.clipped = pairwise_sum(ws.clip) * g.cell_volume();

    // tangential derivatives for the cross terms
    if (md.has_cross) {
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                size_t k = g.idx(i, j);
                ws.cx[k] = detail::centered(i > 0 ? s.phi[k - 1] : 0, s.phi[k], i + 1 < nx ? s.phi[k + 1] : 0, i == 0,
                                            i + 1 == nx, 0.5 * idx);
                ws.cy[k] = detail::centered(j > 0 ? s.phi[k - nx] : 0, s.phi[k], j + 1 < ny ? s.phi[k + nx] : 0,
                                            j == 0, j + 1 == ny, 0.5 * idy);
            }
    }

    // diffusion of phi, scattered from faces
    std::fill(ws.lap.begin(), ws.lap.end(), 0.0);
    for (int j = 0; j < ny; ++j)
        for (int i = 1; i < nx; ++i) {
            size_t L = g.idx(i - 1, j), R = g.idx(i, j);
            double an = 0.5 * (md.a11[L] + md.a11[R]);
            double at = md.has_cross ? 0.5 * (md.a12[L] + md.a12[R]) : 0.0;
            double tL = md.has_cross ? ws.cy[L] : 0.0, tR = md.has_cross ? ws.cy[R] : 0.0;
            double G = detail::phi_flux(s.phi[L], s.phi[R], an, at, tL, tR, idx) * idx;
            ws.lap[L] += G;
            ws.lap[R] -= G;
        }
    if (two_d)
        for (int j = 1; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                size_t B = g.idx(i, j - 1), T = g.idx(i, j);
                double an = 0.5 * (md.a22[B] + md.a22[T]);
                double at = md.has_cross ? 0.5 * (md.a12[B] + md.a12[T]) : 0.0;
                double tB = md.has_cross ? ws.cx[B] : 0.0, tT = md.has_cross ? ws.cx[T] : 0.0;
                double G = detail::phi_flux(s.phi[B], s.phi[T], an, at, tB, tT, idy) * idy;
                ws.lap[B] += G;
                ws.lap[T] -= G;
            }

    const double se = dt / (p.epsilon * p.epsilon);
    double phi_diss = 0;
    for (size_t k = 0; k < n; ++k) {
        double r = s.phi[k] + dt * ws.lap[k] + se * ws.rho_new[k];
        double pn = detail::solve_reaction(r, se * md.c[k], laws.g, s.phi[k]);
        if (opt.dissipation) ws.cell_buf[k] = (pn - s.phi[k]) * (pn - s.phi[k]);
        ws.lap[k] = pn;  // reuse as phi_new
    }
    if (opt.dissipation) {
        phi_diss = p.epsilon * pairwise_sum(ws.cell_buf) / (dt * dt) * g.cell_volume();
        // rho |v|^2 on faces, v = -kc grad(mu)
        std::vector<double> fb;
        fb.reserve(ws.fx.size() + ws.fy.size());
        for (int j = 0; j < ny; ++j)
            for (int i = 1; i < nx; ++i) {
                size_t L = g.idx(i - 1, j), R = g.idx(i, j);
                double dmu = ws.mu[R] - ws.mu[L];
                double up = dmu > 0 ? s.rho[R] : s.rho[L];
                double v = kc * dmu * idx;
                fb.push_back(up < 1e-12 ? 0.0 : up * v * v);
            }
        if (two_d)
            for (int j = 1; j < ny; ++j)
                for (int i = 0; i < nx; ++i) {
                    size_t B = g.idx(i, j - 1), T = g.idx(i, j);
                    double dmu = ws.mu[T] - ws.mu[B];
                    double up = dmu > 0 ? s.rho[T] : s.rho[B];
                    double v = kc * dmu * idy;
                    fb.push_back(up < 1e-12 ? 0.0 : up * v * v);
                }
        info.dissipation = p.alpha0 * pairwise_sum(fb) * g.cell_volume() + phi_diss;
    }

    if (s.mass <= 0) s.mass = total_mass(s.rho, g);
    s.rho.swap(ws.rho_new);
    s.phi.swap(ws.lap);
    s.t += dt;
    s.clipped_mass += info.clipped;
    detail::restore_mass(s, g);
    return info;
}

} // namespace pks
