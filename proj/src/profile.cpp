#include "pks/profile.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "pks/errors.hpp"

namespace pks {

namespace odeint = boost::numeric::odeint;

namespace {

using Stepper = odeint::runge_kutta_dopri5<double, double, double, double, odeint::vector_space_algebra>;

struct Branch {
    std::vector<double> s, w;
};

// integrate w' = sign * sqrt(2 W*_c(w)) / |p|_A away from the anchor in s >= 0
Branch integrate_branch(const Potentials& pot, double c, double normA, double sign, double s_max,
                        const ProfileOptions& opt) {
    const double vp = pot.k().phi_plus;
    const double lo = 1e-14, hi = vp - 1e-14;
    auto rhs = [&](double w) { return sign * std::sqrt(2.0 * std::max(0.0, pot.WstarC(c, w))) / normA; };
    auto sys = [&](const double& w, double& dw, double) { dw = rhs(w); };

    auto ctrl = odeint::make_controlled(opt.tol, opt.tol, Stepper());
    Branch b;
    double s = 0, w = 0.5 * vp, h = std::min(opt.max_step, 1e-3);
    b.s.push_back(s);
    b.w.push_back(w);
    auto done = [&](double ww) { return sign < 0 ? ww < opt.stop_gap : vp - ww < opt.stop_gap_plus; };
    int guard = 0;
    while (s < s_max && !done(w)) {
        if (++guard > 2000000) throw StallError("profile integration did not terminate");
        double slope = std::abs(rhs(w));
        double gap = std::min(w, vp - w);
        double cap = opt.max_step;
        if (slope > 0) cap = std::min(cap, 0.1 * gap / slope);
        // land on the kink of W* at v = a rather than stepping across it
        double a = pot.k().a;
        if (slope > 0 && (w - a) * sign < 0) {
            double to_kink = std::abs(a - w) / slope;
            if (to_kink < cap) cap = std::max(to_kink, 1e-6);
        }
        double step = std::min({h, cap, s_max - s});
        double ws = w, ss = s;
        auto res = ctrl.try_step(sys, ws, ss, step);
        if (res == odeint::success) {
            w = std::clamp(ws, lo, hi);
            s = ss;
            h = step;
            b.s.push_back(s);
            b.w.push_back(w);
        } else {
            h = step;
            if (h < 1e-14) throw StallError("profile step size underflow");
        }
    }
    return b;
}

} // namespace

double fit_slope(const std::vector<double>& x, const std::vector<double>& y, double* r2) {
    const size_t n = x.size();
    if (n < 2) return 0.0;
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (r2) *r2 = (sxx > 0 && syy > 0) ? sxy * sxy / (sxx * syy) : 1.0;
    return sxx > 0 ? sxy / sxx : 0.0;
}

ProfileSolution solve_profile(const Potentials& pot, const ProfileOptions& opt) {
    const auto& k = pot.k();
    if (!(opt.norm_p_A > 0)) throw DomainError("|p|_A must be positive");
    double c = opt.c_value < 0 ? k.c_bar : opt.c_value;

    Branch fwd = integrate_branch(pot, c, opt.norm_p_A, -1.0, opt.z_max, opt);
    Branch bwd = integrate_branch(pot, c, opt.norm_p_A, +1.0, -opt.z_min, opt);

    ProfileSolution sol;
    sol.anchor = 0.5 * k.phi_plus;
    sol.norm_p_A = opt.norm_p_A;
    sol.c_value = c;
    sol.phi_plus = k.phi_plus;
    for (size_t i = bwd.s.size(); i-- > 1;) {
        sol.z.push_back(-bwd.s[i]);
        sol.omega.push_back(bwd.w[i]);
    }
    sol.zero_index = sol.z.size();
    for (size_t i = 0; i < fwd.s.size(); ++i) {
        sol.z.push_back(fwd.s[i]);
        sol.omega.push_back(fwd.w[i]);
    }
    auto rhs = [&](double w) { return -std::sqrt(2.0 * std::max(0.0, pot.WstarC(c, w))) / opt.norm_p_A; };
    sol.domega.resize(sol.z.size());
    for (size_t i = 0; i < sol.z.size(); ++i) sol.domega[i] = rhs(sol.omega[i]);

    // defect of the piecewise Hermite interpolant at interval midpoints
    double worst = 0;
    for (size_t i = 0; i + 1 < sol.z.size(); ++i) {
        double zm = 0.5 * (sol.z[i] + sol.z[i + 1]);
        worst = std::max(worst, std::abs(sol.deriv(zm) - rhs(sol.eval(zm))));
    }
    sol.max_residual = worst;

    // tail fits over the last two decades of each approach
    {
        double w_end = sol.omega.back();
        std::vector<double> zz, lw, lz;
        for (size_t i = sol.zero_index; i < sol.z.size(); ++i)
            if (sol.omega[i] <= 100 * w_end && sol.z[i] > 0) {
                zz.push_back(sol.z[i]);
                lw.push_back(std::log(sol.omega[i]));
                lz.push_back(std::log(sol.z[i]));
            }
        sol.tail_rate_zero = -fit_slope(zz, lw);
        // power law: last decade in z, where the offset in 1/(z + C) has faded
        std::vector<double> lz2, lw2;
        const double z_end = sol.z.back();
        for (size_t i = sol.zero_index; i < sol.z.size(); ++i)
            if (sol.z[i] >= 0.1 * z_end && sol.omega[i] > 0) {
                lz2.push_back(std::log(sol.z[i]));
                lw2.push_back(std::log(sol.omega[i]));
            }
        sol.tail_slope_zero = lz2.size() >= 2 ? fit_slope(lz2, lw2) : fit_slope(lz, lw);
    }
    {
        double g_end = k.phi_plus - sol.omega.front();
        std::vector<double> zz, lg;
        for (size_t i = 0; i < sol.zero_index; ++i) {
            double gap = k.phi_plus - sol.omega[i];
            if (gap <= 100 * g_end) {
                zz.push_back(sol.z[i]);
                lg.push_back(std::log(gap));
            }
        }
        sol.tail_rate_plus = fit_slope(zz, lg, &sol.tail_fit_r2_plus);
    }
    return sol;
}

namespace {

size_t locate(const std::vector<double>& z, double zz) {
    auto it = std::upper_bound(z.begin(), z.end(), zz);
    size_t i = it == z.begin() ? 0 : static_cast<size_t>(it - z.begin()) - 1;
    return std::min(i, z.size() - 2);
}

} // namespace

double ProfileSolution::eval(double zz) const {
    if (zz <= z.front()) {
        double gap = phi_plus - omega.front();
        return phi_plus - gap * std::exp(tail_rate_plus * (zz - z.front()));
    }
    if (zz >= z.back()) return omega.back() * std::exp(-tail_rate_zero * (zz - z.back()));
    size_t i = locate(z, zz);
    double h = z[i + 1] - z[i], t = (zz - z[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * omega[i] + (t3 - 2 * t2 + t) * h * domega[i] + (-2 * t3 + 3 * t2) * omega[i + 1] +
           (t3 - t2) * h * domega[i + 1];
}

double ProfileSolution::deriv(double zz) const {
    if (zz <= z.front()) {
        double gap = phi_plus - omega.front();
        return -tail_rate_plus * gap * std::exp(tail_rate_plus * (zz - z.front()));
    }
    if (zz >= z.back()) return -tail_rate_zero * omega.back() * std::exp(-tail_rate_zero * (zz - z.back()));
    size_t i = locate(z, zz);
    double h = z[i + 1] - z[i], t = (zz - z[i]) / h;
    double t2 = t * t;
    return ((6 * t2 - 6 * t) * omega[i] + (3 * t2 - 4 * t + 1) * h * domega[i] + (-6 * t2 + 6 * t) * omega[i + 1] +
            (3 * t2 - 2 * t) * h * domega[i + 1]) /
           h;
}

DecayReport verify_decay_bounds(const ProfileSolution& sol, const Potentials& pot) {
    const auto& k = pot.k();
    const auto& g = pot.laws().g;
    DecayReport rep;
    const double q0 = g.q();
    // near zero, W* = c_bar |v|^q / q exactly, so the lower constant is K1 = q
    const double K1 = q0;
    const double r = std::sqrt(2.0 * k.c_bar / K1) / sol.norm_p_A;
    rep.algebraic = q0 > 2.0;
    rep.bound_rate_zero = r;
    rep.measured_rate_zero = sol.tail_rate_zero;
    rep.measured_slope_zero = sol.tail_slope_zero;
    rep.measured_rate_plus = sol.tail_rate_plus;

    double w0 = std::min({1.0, k.a}) * 0.5;
    size_t i0 = sol.zero_index;
    while (i0 < sol.z.size() && sol.omega[i0] > w0) ++i0;
    rep.zero_bound_ok = i0 < sol.z.size();
    if (rep.zero_bound_ok) {
        rep.Z0 = sol.z[i0];
        rep.omega0 = sol.omega[i0];
        for (size_t i = i0; i < sol.z.size(); ++i) {
            double dz = sol.z[i] - rep.Z0, bound;
            if (!rep.algebraic) {
                bound = rep.omega0 * std::exp(-r * dz);
            } else {
                double e = 0.5 * (q0 - 2.0);
                bound = rep.omega0 * std::pow(1.0 + std::pow(rep.omega0, e) * e * r * dz, -1.0 / e);
            }
            double ratio = sol.omega[i] / bound;
            rep.worst_zero_ratio = std::max(rep.worst_zero_ratio, ratio);
        }
        rep.zero_bound_ok = rep.worst_zero_ratio <= 1.0 + 1e-6;
    }

    // sup of g'' on [phi_plus/2, phi_plus]
    double g2 = std::max(g.d2g(0.5 * k.phi_plus), g.d2g(k.phi_plus));
    double kb = std::sqrt(2.0 * k.c_bar * g2) / sol.norm_p_A;
    rep.bound_rate_plus = kb;
    rep.plus_lower_ok = true;
    rep.plus_upper_as_printed = true;
    for (size_t i = 0; i <= sol.zero_index && i < sol.z.size(); ++i) {
        if (sol.z[i] > 0) break;
        double gap = k.phi_plus - sol.omega[i];
        double env = 0.5 * k.phi_plus * std::exp(kb * sol.z[i]);
        if (gap < env * (1.0 - 1e-6)) rep.plus_lower_ok = false;
        if (gap > env * (1.0 + 1e-6)) rep.plus_upper_as_printed = false;
    }
    return rep;
}

double profile_energy(const ProfileSolution& sol, const Potentials& pot) {
    const double p2 = sol.norm_p_A * sol.norm_p_A;
    auto dens = [&](double w, double dw) { return pot.WstarC(sol.c_value, w) + 0.5 * p2 * dw * dw; };
    // Simpson per interval, midpoint from the Hermite interpolant
    double e = 0;
    for (size_t i = 0; i + 1 < sol.z.size(); ++i) {
        double h = sol.z[i + 1] - sol.z[i];
        double zm = sol.z[i] + 0.5 * h;
        double fa = dens(sol.omega[i], sol.domega[i]);
        double fb = dens(sol.omega[i + 1], sol.domega[i + 1]);
        double fm = dens(sol.eval(zm), sol.deriv(zm));
        e += h * (fa + 4 * fm + fb) / 6.0;
    }
    return e;
}

} // namespace pks
