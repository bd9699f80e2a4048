#include "pks/fields.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/os.h>

#include "pks/errors.hpp"

namespace pks {

Grid Grid::line(int nx, double lx, double x0) {
    if (nx < 2 || !(lx > 0)) throw SpecError("1D grid needs nx >= 2 and lx > 0");
    Grid g;
    g.dim = 1;
    g.nx = nx;
    g.ny = 1;
    g.lx = lx;
    g.ly = 1;
    g.dx = lx / nx;
    g.dy = 1;
    g.x0 = x0;
    return g;
}

Grid Grid::plane(int nx, int ny, double lx, double ly, double x0, double y0) {
    if (nx < 2 || ny < 2 || !(lx > 0) || !(ly > 0)) throw SpecError("2D grid needs nx, ny >= 2 and positive lengths");
    Grid g;
    g.dim = 2;
    g.nx = nx;
    g.ny = ny;
    g.lx = lx;
    g.ly = ly;
    g.dx = lx / nx;
    g.dy = ly / ny;
    g.x0 = x0;
    g.y0 = y0;
    return g;
}

Mat2 Medium::A_at(double x, double y) const {
    (void)y;
    Mat2 A;
    switch (spec.a_profile) {
    case AProfile::Identity:
        break;
    case AProfile::Diagonal:
        A.a11 = spec.a_diag[0];
        A.a22 = spec.a_diag[1];
        break;
    case AProfile::Rotating: {
        double th = spec.theta0 + spec.theta1 * x;
        double cs = std::cos(th), sn = std::sin(th);
        // R diag(1, kappa) R^T
        A.a11 = cs * cs + spec.kappa * sn * sn;
        A.a22 = sn * sn + spec.kappa * cs * cs;
        A.a12 = cs * sn * (1.0 - spec.kappa);
        break;
    }
    }
    if (grid.dim == 1) {
        A.a12 = 0;
        A.a22 = 1;
    }
    return A;
}

double Medium::dist_omega0(double x, double y) const {
    if (spec.c_profile == CProfile::Constant) return 0.0;
    const Box& b = spec.omega0;
    double ex = std::max({b.x0 - x, 0.0, x - b.x1});
    if (grid.dim == 1) return ex;
    double ey = std::max({b.y0 - y, 0.0, y - b.y1});
    return std::hypot(ex, ey);
}

double Medium::c_at(double x, double y) const {
    double d = dist_omega0(x, y);
    switch (spec.c_profile) {
    case CProfile::Constant: return c_bar;
    case CProfile::QuadraticMoat: return c_bar + 0.5 * spec.lambda * d * d;
    case CProfile::Quartic: return c_bar + 0.5 * spec.lambda * d * d * d * d;
    }
    return c_bar;
}

double Medium::norm(size_t cell, double px, double py) const {
    double s = a11[cell] * px * px + 2 * a12[cell] * px * py + a22[cell] * py * py;
    return std::sqrt(std::max(0.0, s));
}

double Medium::norm_at(double x, double y, double px, double py) const {
    Mat2 A = A_at(x, y);
    return std::sqrt(std::max(0.0, A.a11 * px * px + 2 * A.a12 * px * py + A.a22 * py * py));
}

double Medium::omega0_measure() const {
    double n = 0;
    for (auto m : omega0) n += m;
    return n * grid.cell_volume();
}

Medium build_medium(const Grid& grid, const MediumSpec& spec) {
    if (!(spec.c_bar > 0)) throw SpecError("c_bar must be positive");
    Medium md;
    md.grid = grid;
    md.spec = spec;
    md.c_bar = spec.c_bar;
    if (spec.c_profile != CProfile::Constant) {
        const Box& b = spec.omega0;
        bool bad = !(b.x1 > b.x0) || !(b.x0 > grid.x0) || !(b.x1 < grid.x0 + grid.lx);
        if (grid.dim == 2)
            bad = bad || !(b.y1 > b.y0) || !(b.y0 > grid.y0) || !(b.y1 < grid.y0 + grid.ly);
        if (bad) throw SpecError("slow-decay box must be nonempty and keep clear of the domain boundary");
        if (!(spec.lambda > 0)) throw SpecError("lambda must be positive for a nonconstant destruction rate");
    }
    if (spec.a_profile == AProfile::Diagonal && !(spec.a_diag[0] > 0 && spec.a_diag[1] > 0))
        throw SpecError("diagonal diffusivity must be positive");
    if (spec.a_profile == AProfile::Rotating && !(spec.kappa > 0)) throw SpecError("kappa must be positive");

    const size_t n = grid.size();
    md.a11.resize(n);
    md.a12.resize(n);
    md.a22.resize(n);
    md.c.resize(n);
    md.omega0.resize(n);
    md.A_lo = 1e300;
    md.A_hi = 0;
    md.c_max = spec.c_bar;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            size_t k = grid.idx(i, j);
            double x = grid.xc(i), y = grid.yc(j);
            Mat2 A = md.A_at(x, y);
            md.a11[k] = A.a11;
            md.a12[k] = A.a12;
            md.a22[k] = A.a22;
            if (A.a12 != 0) md.has_cross = true;
            double tr = A.a11 + A.a22, det = A.a11 * A.a22 - A.a12 * A.a12;
            double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
            double lmin = grid.dim == 1 ? A.a11 : 0.5 * tr - disc;
            double lmax = grid.dim == 1 ? A.a11 : 0.5 * tr + disc;
            md.A_lo = std::min(md.A_lo, lmin);
            md.A_hi = std::max(md.A_hi, lmax);
            md.c[k] = md.c_at(x, y);
            md.c_max = std::max(md.c_max, md.c[k]);
            md.omega0[k] = md.c[k] <= spec.c_bar + 1e-12 ? 1 : 0;
        }
    if (!(md.A_lo > 0)) throw SpecError("diffusivity is not uniformly elliptic");
    return md;
}

bool mask_regular_closed(const Grid& g, const std::vector<std::uint8_t>& mask) {
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (!mask[g.idx(i, j)]) continue;
            bool nb = (i > 0 && mask[g.idx(i - 1, j)]) || (i + 1 < g.nx && mask[g.idx(i + 1, j)]) ||
                      (j > 0 && mask[g.idx(i, j - 1)]) || (j + 1 < g.ny && mask[g.idx(i, j + 1)]);
            if (!nb) return false;
        }
    return true;
}

NondegeneracyReport check_nondegeneracy(const Medium& md, double lambda_guess, double collar) {
    NondegeneracyReport rep;
    if (md.spec.c_profile == CProfile::Constant) {
        rep.note = "not applicable";
        return rep;
    }
    rep.applicable = true;
    const Grid& g = md.grid;
    rep.regular_closed = mask_regular_closed(g, md.omega0);
    double lam_min = 1e300;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            size_t k = g.idx(i, j);
            double d = md.dist_omega0(g.xc(i), g.yc(j));
            if (d <= 0 || d > collar) continue;
            if (md.c[k] - md.c_bar < 0.5 * lambda_guess * d * d - 1e-12) ++rep.quadratic_violations;
            // Laplacian only where the whole stencil sits outside the set
            if (i == 0 || i + 1 == g.nx) continue;
            if (g.dim == 2 && (j == 0 || j + 1 == g.ny)) continue;
            bool outside = !md.omega0[g.idx(i - 1, j)] && !md.omega0[g.idx(i + 1, j)];
            if (g.dim == 2) outside = outside && !md.omega0[g.idx(i, j - 1)] && !md.omega0[g.idx(i, j + 1)];
            if (!outside) continue;
            double lap = (md.c[g.idx(i + 1, j)] - 2 * md.c[k] + md.c[g.idx(i - 1, j)]) / (g.dx * g.dx);
            if (g.dim == 2) lap += (md.c[g.idx(i, j + 1)] - 2 * md.c[k] + md.c[g.idx(i, j - 1)]) / (g.dy * g.dy);
            lam_min = std::min(lam_min, lap);
            if (lap < lambda_guess * (1.0 - 1e-6)) ++rep.laplacian_violations;
        }
    rep.lambda_measured = lam_min == 1e300 ? 0.0 : lam_min;
    rep.quadratic_ok = rep.quadratic_violations == 0;
    rep.laplacian_ok = lam_min != 1e300 && rep.laplacian_violations == 0;
    rep.passes = rep.quadratic_ok && rep.laplacian_ok && rep.regular_closed;
    rep.note = rep.passes ? "nondegenerate" : "degenerate";
    return rep;
}

void write_field_csv(const std::string& path, const Grid& g, const Field& f) {
    auto out = fmt::output_file(path);
    out.print("i,j,x,y,value\n");
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.print("{},{},{:.17g},{:.17g},{:.17g}\n", i, j, g.xc(i), g.yc(j), f[g.idx(i, j)]);
}

Field read_field_csv(const std::string& path, const Grid& g) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open " + path);
    Field f(g.size(), 0.0);
    std::string line;
    std::getline(in, line);
    size_t count = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        int i, j;
        double x, y, v;
        std::getline(ss, tok, ',');
        i = std::stoi(tok);
        std::getline(ss, tok, ',');
        j = std::stoi(tok);
        std::getline(ss, tok, ',');
        x = std::stod(tok);
        std::getline(ss, tok, ',');
        y = std::stod(tok);
        std::getline(ss, tok, ',');
        v = std::stod(tok);
        (void)x;
        (void)y;
        if (i < 0 || j < 0 || i >= g.nx || j >= g.ny) throw SpecError("field csv index out of range");
        f[g.idx(i, j)] = v;
        ++count;
    }
    if (count != g.size()) throw SpecError("field csv has wrong number of rows");
    return f;
}

} // namespace pks
