#include "pks/recovery.hpp"

#include <cmath>
#include <numbers>

#include "pks/diagnostics.hpp"
#include "pks/errors.hpp"

namespace pks {

TargetSet TargetSet::interval(double x0, double x1, const Grid& g) {
    if (!(x1 > x0)) throw GeometryError("empty interval target");
    TargetSet t;
    t.kind = Kind::Interval;
    t.x0 = x0;
    t.x1 = x1;
    const double tol = 1e-12 * g.lx;
    t.lower_on_boundary = x0 <= g.x0 + tol;
    t.upper_on_boundary = x1 >= g.x0 + g.lx - tol;
    if (t.lower_on_boundary && t.upper_on_boundary) throw GeometryError("interval target has no interface");
    return t;
}

TargetSet TargetSet::disk(double cx, double cy, double r) {
    if (!(r > 0)) throw GeometryError("disk radius must be positive");
    TargetSet t;
    t.kind = Kind::Disk;
    t.cx = cx;
    t.cy = cy;
    t.r = r;
    return t;
}

TargetSet TargetSet::from(const TargetSection& s, const Grid& g) {
    if (s.kind == "disk") {
        if (g.dim != 2) throw GeometryError("disk target needs a 2D grid");
        return disk(s.cx, s.cy, s.radius);
    }
    return interval(s.x0, s.x1, g);
}

double TargetSet::signed_distance(double x, double y) const {
    if (kind == Kind::Disk) return std::hypot(x - cx, y - cy) - r;
    if (lower_on_boundary) return x - x1;
    if (upper_on_boundary) return x0 - x;
    return std::max(x0 - x, x - x1);
}

void TargetSet::normal(double x, double y, double& nx, double& ny) const {
    ny = 0;
    if (kind == Kind::Disk) {
        double d = std::hypot(x - cx, y - cy);
        if (d == 0) {
            nx = 1;
            return;
        }
        nx = (x - cx) / d;
        ny = (y - cy) / d;
        return;
    }
    if (lower_on_boundary) nx = 1;
    else if (upper_on_boundary) nx = -1;
    else nx = (x - x1 > x0 - x) ? 1 : -1;
}

double TargetSet::measure(const Grid& g) const {
    if (kind == Kind::Disk) return std::numbers::pi * r * r;
    double lo = std::max(x0, g.x0), hi = std::min(x1, g.x0 + g.lx);
    return std::max(0.0, hi - lo) * (g.dim == 2 ? g.ly : 1.0);
}

double TargetSet::clearance(const Medium& md, bool check_omega0) const {
    const Grid& g = md.grid;
    const double X0 = g.x0, X1 = g.x0 + g.lx, Y0 = g.y0, Y1 = g.y0 + g.ly;
    const Box& b = md.spec.omega0;
    const bool box = check_omega0 && md.spec.c_profile != CProfile::Constant;
    double best = 1e300;
    if (kind == Kind::Disk) {
        best = std::min({cx - r - X0, X1 - cx - r, cy - r - Y0, Y1 - cy - r});
        if (box) best = std::min({best, cx - r - b.x0, b.x1 - cx - r, cy - r - b.y0, b.y1 - cy - r});
        return best;
    }
    auto side = [&](double p) {
        double d = std::min(p - X0, X1 - p);
        if (box) d = std::min({d, p - b.x0, b.x1 - p});
        best = std::min(best, d);
    };
    if (!lower_on_boundary) side(x0);
    if (!upper_on_boundary) side(x1);
    return best;
}

double TargetSet::weighted_length(const Medium& md) const {
    const Grid& g = md.grid;
    double total = 0;
    if (kind == Kind::Disk) {
        const int n = 4096;
        for (int k = 0; k < n; ++k) {
            double th = 2 * std::numbers::pi * (k + 0.5) / n;
            double c = std::cos(th), s = std::sin(th);
            total += md.norm_at(cx + r * c, cy + r * s, c, s);
        }
        return total * 2 * std::numbers::pi * r / n;
    }
    auto edge = [&](double p) {
        if (g.dim == 1) {
            total += md.norm_at(p, 0, 1, 0);
            return;
        }
        for (int j = 0; j < g.ny; ++j) total += md.norm_at(p, g.yc(j), 1, 0) * g.dy;
    };
    if (!lower_on_boundary) edge(x0);
    if (!upper_on_boundary) edge(x1);
    return total;
}

Field build_phi(const TargetSet& e, double epsilon, double tau, const Medium& md, const ProfileSolution& omega,
                double phi_plus, bool check_omega0) {
    const double se = std::sqrt(epsilon);
    if (!(2 * se < e.clearance(md, check_omega0)))
        throw LayerOverflow("transition layer of half width " + std::to_string(2 * se) + " does not fit");
    const Grid& g = md.grid;
    Field phi(g.size());
    // profile for |p|_A = n: omega_n(s) = omega_N(s N / n), N the solved norm
    auto prof = [&](double s, double n) { return omega.eval(s * omega.norm_p_A / n); };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double x = g.xc(i), y = g.yc(j);
            double z = e.signed_distance(x, y) / se - se * tau;
            double v;
            if (z < -2) {
                v = phi_plus;
            } else if (z >= 2) {
                v = 0;
            } else {
                double nx, ny;
                e.normal(x, y, nx, ny);
                double n = md.norm(g.idx(i, j), nx, ny);
                if (z < -1) v = phi_plus - (phi_plus - prof(-1 / se, n)) * (2 + z);
                else if (z < 1) v = prof(z / se, n);
                else v = prof(1 / se, n) * (2 - z);
            }
            phi[g.idx(i, j)] = std::clamp(v, 0.0, phi_plus);
        }
    return phi;
}

Field build_rho(const Field& phi, const Potentials& pot) {
    const auto& f = pot.laws().f;
    const double a = pot.k().a;
    Field rho(phi.size());
    for (size_t k = 0; k < phi.size(); ++k) rho[k] = f.dfstar(phi[k] - a);
    return rho;
}

RecoveryPair mass_translate(const TargetSet& e, double epsilon, const Medium& md, const Potentials& pot,
                            const ProfileSolution& omega, bool check_omega0) {
    const Grid& g = md.grid;
    const double pp = pot.k().phi_plus;
    auto build = [&](double tau) {
        RecoveryPair r;
        r.tau = tau;
        r.epsilon = epsilon;
        r.phi = build_phi(e, epsilon, tau, md, omega, pp, check_omega0);
        r.rho = build_rho(r.phi, pot);
        r.mass = total_mass(r.rho, g);
        return r;
    };
    RecoveryPair lo = build(-2), hi = build(2);
    if (!(lo.mass <= 1 && hi.mass >= 1))
        throw BracketError("mass bracket fails: mass(-2) = " + std::to_string(lo.mass) +
                           ", mass(2) = " + std::to_string(hi.mass));
    double a = -2, b = 2;
    RecoveryPair mid = std::abs(lo.mass - 1) < std::abs(hi.mass - 1) ? lo : hi;
    for (int it = 0; it < 200 && std::abs(mid.mass - 1) > 1e-12; ++it) {
        double c = 0.5 * (a + b);
        if (c == a || c == b) break;
        mid = build(c);
        if (mid.mass < 1) a = c;
        else b = c;
    }
    if (std::abs(mid.mass - 1) > 1e-10)
        throw BracketError("mass search stalled at |mass - 1| = " + std::to_string(std::abs(mid.mass - 1)));
    return mid;
}

std::vector<GammaRow> gamma_limsup_check(const TargetSet& e, const std::vector<double>& eps_list, const Medium& md,
                                         const Potentials& pot, const ProfileSolution& omega) {
    for (size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1])) throw ValidationError("eps list must be strictly decreasing");
    const double G0 = pot.tension().gamma * pot.k().phi_plus * e.weighted_length(md);
    std::vector<GammaRow> rows(eps_list.size());
#pragma omp parallel for schedule(dynamic, 1) if (eps_list.size() > 1)
    for (long i = 0; i < static_cast<long>(eps_list.size()); ++i) {
        RecoveryPair r = mass_translate(e, eps_list[i], md, pot, omega);
        SimState s;
        s.rho = r.rho;
        s.phi = r.phi;
        s.mass = r.mass;
        SimParams p;
        p.epsilon = eps_list[i];
        EnergyReport er = energy_report(s, p, md, pot);
        GammaRow& row = rows[i];
        row.eps = eps_list[i];
        row.G_eps = er.G_eps_formA;
        row.G0 = G0;
        row.rel_err = std::abs(er.G_eps_formA - G0) / G0;
        row.tau = r.tau;
        row.mass = r.mass;
        row.P_term = er.P_term;
        row.F_ceps = er.F_ceps;
    }
    return rows;
}

SimState well_prepared_init(const TargetSet& e, double epsilon, const Medium& md, const Potentials& pot,
                            const ProfileSolution& omega, bool allow_outside) {
    const double rp = pot.k().rho_plus;
    if (!(rp * md.omega0_measure() > 1))
        throw GeometryError("slow-decay set too small: rho_plus |Omega0| = " +
                            std::to_string(rp * md.omega0_measure()) + " <= 1");
    double em = rp * e.measure(md.grid);
    if (std::abs(em - 1) > 1e-10)
        throw GeometryError("target must satisfy rho_plus |E| = 1, got " + std::to_string(em));
    RecoveryPair r = mass_translate(e, epsilon, md, pot, omega, !allow_outside);
    SimState s;
    s.rho = std::move(r.rho);
    s.phi = std::move(r.phi);
    const double m = total_mass(s.rho, md.grid);
    for (auto& v : s.rho) v /= m;
    s.mass = total_mass(s.rho, md.grid);
    return s;
}

} // namespace pks
