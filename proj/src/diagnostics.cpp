#include "pks/diagnostics.hpp"

#include <cmath>
#include <numeric>

#include "pks/errors.hpp"
#include "pks/parallel.hpp"
#include "pks/profile.hpp"

namespace pks {

void gradient(const Field& u, const Grid& g, Field& gx, Field& gy) {
    const int nx = g.nx, ny = g.ny;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
    gx.assign(n, 0.0);
    gy.assign(n, 0.0);
    const double hx = 0.5 / g.dx, hy = 0.5 / g.dy;
#pragma omp parallel for if (n > kOmpMinWork) schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        int i = static_cast<int>(k % nx), j = static_cast<int>(k / nx);
        double l = i > 0 ? u[k - 1] : u[k], r = i + 1 < nx ? u[k + 1] : u[k];
        gx[k] = (r - l) * hx;
        if (g.dim == 2) {
            double b = j > 0 ? u[k - nx] : u[k], t = j + 1 < ny ? u[k + nx] : u[k];
            gy[k] = (t - b) * hy;
        }
    }
}

namespace {

inline double normA2(const Medium& md, size_t k, double gx, double gy) {
    return md.a11[k] * gx * gx + 2 * md.a12[k] * gx * gy + md.a22[k] * gy * gy;
}

// |grad phi|_A^2 charged to cell k: its right and top faces with face-averaged
// coefficients (the solver's diffusion stencil), cross term from centred differences
inline double face_dirichlet(const Medium& md, const double* u, std::ptrdiff_t k) {
    const Grid& g = md.grid;
    const int nx = g.nx, ny = g.ny;
    const int i = static_cast<int>(k % nx), j = static_cast<int>(k / nx);
    double s = 0;
    if (i + 1 < nx) {
        double d = (u[k + 1] - u[k]) / g.dx;
        s += 0.5 * (md.a11[k] + md.a11[k + 1]) * d * d;
    }
    if (g.dim == 2) {
        if (j + 1 < ny) {
            double d = (u[k + nx] - u[k]) / g.dy;
            s += 0.5 * (md.a22[k] + md.a22[k + nx]) * d * d;
        }
        if (md.has_cross) {
            double v = u[k];
            double gx = ((i + 1 < nx ? u[k + 1] : v) - (i > 0 ? u[k - 1] : v)) * (0.5 / g.dx);
            double gy = ((j + 1 < ny ? u[k + nx] : v) - (j > 0 ? u[k - nx] : v)) * (0.5 / g.dy);
            s += 2 * md.a12[k] * gx * gy;
        }
    }
    return s;
}

} // namespace

EnergyReport energy_report(const SimState& s, const SimParams& p, const Medium& md, const Potentials& pot) {
    const Grid& g = md.grid;
    const size_t n = g.size();
    const double eps = p.epsilon, vol = g.cell_volume();
    const auto& laws = pot.laws();
    std::vector<Field> buf(6, Field(n));
    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for if (nn > kOmpMinWork) schedule(static)
    for (std::ptrdiff_t k = 0; k < nn; ++k) {
        double u = s.rho[k], v = s.phi[k];
        auto pr = pot.penalties(u, v);
        buf[0][k] = pot.W(u);
        buf[1][k] = pr.R;
        buf[2][k] = face_dirichlet(md, s.phi.data(), k);
        buf[3][k] = (md.c[k] - md.c_bar) * laws.g.g(v);
        buf[4][k] = pr.P;
        buf[5][k] = pot.Wstar(v);
    }
    EnergyReport e;
    e.W_term = pairwise_sum(buf[0]) * vol / eps;
    e.R_term = pairwise_sum(buf[1]) * vol / eps;
    e.dirichlet_term = 0.5 * eps * pairwise_sum(buf[2]) * vol;
    e.obstacle_term = pairwise_sum(buf[3]) * vol / eps;
    e.P_term = pairwise_sum(buf[4]) * vol / eps;
    e.Wstar_term = pairwise_sum(buf[5]) * vol / eps;
    e.G_eps_formA = e.W_term + e.R_term + e.dirichlet_term + e.obstacle_term;
    e.G_eps_formB = e.Wstar_term + e.dirichlet_term + e.obstacle_term + e.P_term;
    e.F_ceps = e.Wstar_term + e.dirichlet_term + e.obstacle_term;
    e.F_eps = e.Wstar_term + e.dirichlet_term;
    e.mass = total_mass(s.rho, g);
    return e;
}

double energy_total(const SimState& s, const SimParams& p, const Medium& md, const Potentials& pot) {
    const Grid& g = md.grid;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
    const double eps = p.epsilon, ieps = 1.0 / eps;
    const auto& laws = pot.laws();
    const double a = pot.k().a;
    thread_local Field buf;
    buf.resize(n);
    const double* u = s.phi.data();
#pragma omp parallel for if (n > kOmpMinWork) schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        double rho = s.rho[k], v = u[k];
        double bulk = laws.f.f_fast(rho) + a * rho - rho * v + md.c[k] * laws.g.g(v);
        buf[k] = ieps * bulk + 0.5 * eps * face_dirichlet(md, u, k);
    }
    return pairwise_sum(buf.data(), n) * g.cell_volume();
}

Equipartition equipartition_residuals(const SimState& s, const SimParams& p, const Medium& md,
                                      const Potentials& pot) {
    const Grid& g = md.grid;
    const size_t n = g.size();
    const double eps = p.epsilon, vol = g.cell_volume();
    Field gx, gy, psi(n), sx, sy;
    gradient(s.phi, g, gx, gy);
    for (size_t k = 0; k < n; ++k) psi[k] = pot.F(s.phi[k]);
    gradient(psi, g, sx, sy);
    Field b1(n), b2(n), b3(n);
    for (size_t k = 0; k < n; ++k) {
        double u = s.rho[k], v = s.phi[k];
        double ws = pot.Wstar(v);
        double wr = pot.W(u) + pot.penalties(u, v).R;
        b1[k] = std::abs(wr - ws) / eps;
        double d = std::sqrt(ws / eps) - std::sqrt(0.5 * eps * normA2(md, k, gx[k], gy[k]));
        b2[k] = d * d;
        b3[k] = std::abs(ws / eps - 0.5 * std::sqrt(normA2(md, k, sx[k], sy[k])));
    }
    Equipartition r;
    r.r1 = pairwise_sum(b1) * vol;
    r.r2 = std::sqrt(pairwise_sum(b2) * vol);
    r.r3 = pairwise_sum(b3) * vol;
    return r;
}

double mm_perimeter(const SimState& s, const Medium& md, const Potentials& pot) {
    const Grid& g = md.grid;
    const size_t n = g.size();
    Field psi(n), sx, sy;
    for (size_t k = 0; k < n; ++k) psi[k] = pot.F(s.phi[k]);
    gradient(psi, g, sx, sy);
    Field b(n);
    for (size_t k = 0; k < n; ++k) b[k] = std::sqrt(normA2(md, k, sx[k], sy[k]));
    return pairwise_sum(b) * g.cell_volume();
}

int label_components(const Grid& g, const std::vector<std::uint8_t>& mask, std::vector<int>& labels) {
    labels.assign(g.size(), -1);
    int count = 0;
    std::vector<size_t> stack;
    for (size_t start = 0; start < g.size(); ++start) {
        if (!mask[start] || labels[start] >= 0) continue;
        labels[start] = count;
        stack.push_back(start);
        while (!stack.empty()) {
            size_t k = stack.back();
            stack.pop_back();
            int i = static_cast<int>(k % g.nx), j = static_cast<int>(k / g.nx);
            auto visit = [&](int ii, int jj) {
                if (ii < 0 || jj < 0 || ii >= g.nx || jj >= g.ny) return;
                size_t m = g.idx(ii, jj);
                if (mask[m] && labels[m] < 0) {
                    labels[m] = count;
                    stack.push_back(m);
                }
            };
            visit(i - 1, j);
            visit(i + 1, j);
            visit(i, j - 1);
            visit(i, j + 1);
        }
        ++count;
    }
    return count;
}

PressureReport approx_pressure(const SimState& s, const SimParams& p, const Medium& md, const Potentials& pot) {
    const Grid& g = md.grid;
    const size_t n = g.size();
    const double vol = g.cell_volume(), a = pot.k().a;
    PressureReport r;
    r.pi.resize(n);
    for (size_t k = 0; k < n; ++k) {
        double u = s.rho[k];
        r.pi[k] = u * (pot.laws().f.df(u) + a - s.phi[k]) / p.epsilon;
    }
    std::vector<int> lab;
    r.components = label_components(g, md.omega0, lab);
    std::vector<Field> members(r.components);
    for (size_t k = 0; k < n; ++k)
        if (lab[k] >= 0) members[lab[k]].push_back(r.pi[k]);
    std::vector<double> mean(r.components, 0.0);
    for (int c = 0; c < r.components; ++c)
        if (!members[c].empty()) mean[c] = pairwise_sum(members[c]) / members[c].size();
    r.p = r.pi;
    for (size_t k = 0; k < n; ++k)
        if (lab[k] >= 0) r.p[k] -= mean[lab[k]];
    // check the normalisation
    for (int c = 0; c < r.components; ++c) {
        Field vals;
        for (size_t k = 0; k < n; ++k)
            if (lab[k] == c) vals.push_back(r.p[k]);
        if (!vals.empty())
            r.worst_component_mean = std::max(r.worst_component_mean, std::abs(pairwise_sum(vals) / vals.size()));
    }
    Field b(n), w(n);
    for (size_t k = 0; k < n; ++k) {
        b[k] = std::abs(r.p[k]);
        w[k] = std::abs(r.pi[k]) * std::sqrt(std::max(0.0, md.c[k] - md.c_bar));
    }
    r.p_L1 = pairwise_sum(b) * vol;
    r.weighted_L1 = pairwise_sum(w) * vol;
    return r;
}

CircleFit fit_circle(const std::vector<Point2>& pts) {
    // algebraic (Kasa) fit: x^2 + y^2 + D x + E y + F = 0
    CircleFit c;
    const size_t n = pts.size();
    if (n < 3) throw ShapeError("too few contour points for a circle fit");
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, sz = 0, sxz = 0, syz = 0;
    for (auto& q : pts) {
        double z = q.x * q.x + q.y * q.y;
        sx += q.x; sy += q.y; sxx += q.x * q.x; syy += q.y * q.y; sxy += q.x * q.y;
        sz += z; sxz += q.x * z; syz += q.y * z;
    }
    // normal equations for (D, E, F)
    double M[3][4] = {{sxx, sxy, sx, -sxz}, {sxy, syy, sy, -syz}, {sx, sy, double(n), -sz}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        for (int k = 0; k < 4; ++k) std::swap(M[col][k], M[piv][k]);
        if (std::abs(M[col][col]) < 1e-300) throw ShapeError("degenerate circle fit");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = M[r][col] / M[col][col];
            for (int k = col; k < 4; ++k) M[r][k] -= f * M[col][k];
        }
    }
    double D = M[0][3] / M[0][0], E = M[1][3] / M[1][1], F = M[2][3] / M[2][2];
    c.cx = -0.5 * D;
    c.cy = -0.5 * E;
    c.r = std::sqrt(std::max(0.0, c.cx * c.cx + c.cy * c.cy - F));
    // second moments about the centroid
    double mx = sx / n, my = sy / n, cxx = 0, cyy = 0, cxy = 0;
    for (auto& q : pts) {
        cxx += (q.x - mx) * (q.x - mx);
        cyy += (q.y - my) * (q.y - my);
        cxy += (q.x - mx) * (q.y - my);
    }
    double tr = cxx + cyy, det = cxx * cyy - cxy * cxy;
    double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    double l1 = 0.5 * tr + disc, l2 = 0.5 * tr - disc;
    c.eccentricity = l1 > 0 ? std::sqrt(std::max(0.0, 1.0 - l2 / l1)) : 0.0;
    // shoelace area
    double A = 0;
    for (size_t i = 0; i < n; ++i) {
        const auto& p0 = pts[i];
        const auto& p1 = pts[(i + 1) % n];
        A += p0.x * p1.y - p1.x * p0.y;
    }
    c.area = 0.5 * std::abs(A);
    return c;
}

DiskReport fbp_residual_disk(const SimState& s, const SimParams& p, const Medium& md, const Potentials& pot) {
    const Grid& g = md.grid;
    if (g.dim != 2) throw ShapeError("disk residual needs a 2D state");
    const auto& k = pot.k();
    std::vector<bool> closed;
    auto cs = extract_contours(s.phi, g, 0.5 * k.phi_plus, &closed);
    size_t best = 0;
    for (size_t i = 1; i < cs.size(); ++i)
        if (cs[i].size() > cs[best].size()) best = i;
    if (cs.empty()) throw EmptyInterface("no interface in the disk state");
    DiskReport rep;
    rep.circle = fit_circle(cs[best]);
    if (rep.circle.eccentricity > 0.2) throw ShapeError("contour eccentricity above 0.2");
    auto pr = approx_pressure(s, p, md, pot);
    // collar of width 3 eps starting 3 eps inside the contour
    const double r_out = rep.circle.r - 3 * p.epsilon, r_in = r_out - 3 * p.epsilon;
    std::vector<double> rr, pp;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double d = std::hypot(g.xc(i) - rep.circle.cx, g.yc(j) - rep.circle.cy);
            if (d >= r_in && d <= r_out) {
                rr.push_back(d);
                pp.push_back(pr.pi[g.idx(i, j)]);
            }
        }
    if (pp.empty()) throw ShapeError("pressure collar is empty");
    rep.p_bar = std::accumulate(pp.begin(), pp.end(), 0.0) / pp.size();
    rep.dnu_p = fit_slope(rr, pp);
    const double g0 = pot.tension().gamma0;
    const double kappa = 1.0 / rep.circle.r;
    rep.residual = rep.p_bar + (p.beta0 * g0 / p.alpha0) * rep.dnu_p - k.rho_plus * g0 * kappa;
    rep.ratio = rep.p_bar * rep.circle.r / (k.rho_plus * g0);
    return rep;
}

} // namespace pks
