#include "pks/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "pks/errors.hpp"

namespace pks {

namespace {

constexpr double kClamp = 1e-12;
constexpr int kSplineNodes = 4096;

double clamp0(double x) { return (x < 0 && x > -kClamp) ? 0.0 : x; }

} // namespace

double integrate_layered(const std::function<double(double)>& fn, double a, double b, double rel_tol,
                         double abs_tol, double* err_out) {
    using boost::math::quadrature::gauss_kronrod;
    if (b <= a) {
        if (err_out) *err_out = 0;
        return 0.0;
    }
    // geometric panels towards each end, ratio 2, 24 levels
    std::vector<double> cuts;
    double mid = 0.5 * (a + b), h = 0.5 * (b - a);
    const int levels = 24;
    cuts.push_back(a);
    for (int k = levels; k >= 1; --k) cuts.push_back(a + h * std::ldexp(1.0, -k));
    cuts.push_back(mid);
    for (int k = 1; k <= levels; ++k) cuts.push_back(b - h * std::ldexp(1.0, -k));
    cuts.push_back(b);

    // Boost's own estimate is |K15 - G7|, far above the K15 error, so bisecting on it
    // recurses to full depth; compare a K15 panel against its two halves instead
    auto k15 = [&](double lo, double hi) { return gauss_kronrod<double, 15>::integrate(fn, lo, hi, 0, 0.0); };
    const double panel_tol = std::max(abs_tol, 1e-16) / cuts.size();
    std::function<double(double, double, double, int, double&)> adapt = [&](double lo, double hi, double whole,
                                                                          int depth, double& err) {
        double m = 0.5 * (lo + hi);
        double l = k15(lo, m), r = k15(m, hi);
        double e = std::abs(l + r - whole);
        if (depth == 0 || e <= std::max(panel_tol, 1e-14 * std::abs(l + r))) {
            err += e;
            return l + r;
        }
        return adapt(lo, m, l, depth - 1, err) + adapt(m, hi, r, depth - 1, err);
    };
    double total = 0, err_total = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = cuts[i], hi = cuts[i + 1];
        if (hi <= lo) continue;
        total += adapt(lo, hi, k15(lo, hi), 12, err_total);
    }
    if (err_out) *err_out = err_total;
    if (err_total > std::max(abs_tol, rel_tol * std::abs(total)))
        throw QuadratureError(fmt::format("quadrature tolerance not met: error {:.3e} on {:.6e}", err_total, total));
    return total;
}

Potentials::Potentials(const LawPair& laws) : laws_(laws) {
    const auto& k = laws_.k;
    auto integrand = [this](double s) { return std::sqrt(2.0 * std::max(0.0, Wstar(s))); };
    F_plus_ = F_exact(std::nextafter(k.phi_plus, 0.0));
    tension_.gamma = F_plus_ / k.phi_plus;
    tension_.gamma0 = tension_.gamma * k.phi_plus / k.rho_plus;

    // Chebyshev-spaced nodes, cumulative integral between neighbours
    nodes_.resize(kSplineNodes + 1);
    for (int i = 0; i <= kSplineNodes; ++i)
        nodes_[i] = 0.5 * k.phi_plus * (1.0 - std::cos(std::numbers::pi * i / kSplineNodes));
    nodes_.front() = 0.0;
    nodes_.back() = k.phi_plus;
    vals_.assign(kSplineNodes + 1, 0.0);
    slopes_.assign(kSplineNodes + 1, 0.0);
    using boost::math::quadrature::gauss_kronrod;
    // one K15 panel per node gap is at rounding for the smooth pieces; the gap
    // holding the kink at v = a is split there and integrated adaptively
    for (int i = 1; i <= kSplineNodes; ++i) {
        double lo = nodes_[i - 1], hi = nodes_[i], piece;
        if (k.a > lo && k.a < hi)
            piece = integrate_layered(integrand, lo, k.a, 1e-9, 1e-14) + integrate_layered(integrand, k.a, hi, 1e-9, 1e-14);
        else
            piece = gauss_kronrod<double, 15>::integrate(integrand, lo, hi, 0, 0.0);
        vals_[i] = vals_[i - 1] + piece;
    }
    // pin the endpoint to the high-accuracy value; the drift is ~1e-15
    double scale = F_plus_ / vals_.back();
    for (auto& v : vals_) v *= scale;
    for (int i = 0; i <= kSplineNodes; ++i) slopes_[i] = integrand(nodes_[i]);
    // Fritsch-Carlson limiter keeps the Hermite cubic monotone
    for (int i = 0; i < kSplineNodes; ++i) {
        double h = nodes_[i + 1] - nodes_[i];
        double del = (vals_[i + 1] - vals_[i]) / h;
        if (del <= 0) {
            slopes_[i] = slopes_[i + 1] = 0;
            continue;
        }
        double al = slopes_[i] / del, be = slopes_[i + 1] / del;
        double s = al * al + be * be;
        if (s > 9.0) {
            double t = 3.0 / std::sqrt(s);
            slopes_[i] = t * al * del;
            slopes_[i + 1] = t * be * del;
        }
    }
}

double Potentials::W(double u) const {
    if (u < 0) throw DomainError("W evaluated at negative density");
    const auto& k = laws_.k;
    return clamp0(laws_.f.f(u) - laws_.cg_star(u) + k.a * u);
}

double Potentials::Wstar(double v) const {
    const auto& k = laws_.k;
    double cg = k.c_bar * laws_.g.g(v);
    if (v <= k.a) return cg;
    return clamp0(cg - laws_.f.fstar(v - k.a));
}

double Potentials::dWstar(double v) const {
    const auto& k = laws_.k;
    return k.c_bar * laws_.g.dg(v) - laws_.f.dfstar(v - k.a);
}

Penalties Potentials::penalties(double u, double v) const {
    if (u < 0) throw DomainError("penalties evaluated at negative density");
    const auto& k = laws_.k;
    Penalties p;
    p.P = clamp0(laws_.f.f(u) - u * (v - k.a) + laws_.f.fstar(v - k.a));
    p.R = clamp0(laws_.cg_star(u) - u * v + k.c_bar * laws_.g.g(v));
    return p;
}

double Potentials::F_exact(double v) const {
    const auto& k = laws_.k;
    if (v <= 0) return 0.0;
    if (v >= k.phi_plus && F_plus_ > 0) return F_plus_;
    auto integrand = [this](double s) { return std::sqrt(2.0 * std::max(0.0, Wstar(s))); };
    // W* has a kink where the pressure branch switches on
    double kink = std::min(v, k.a);
    double val = integrate_layered(integrand, 0.0, kink, 1e-9, 1e-14);
    if (v > kink) val += integrate_layered(integrand, kink, v, 1e-9, 1e-14);
    return val;
}

double Potentials::F(double v) const {
    const double vp = laws_.k.phi_plus;
    if (v <= 0) return 0.0;
    if (v >= vp) return F_plus_;
    // invert the Chebyshev map for the bracketing interval
    double th = std::acos(std::clamp(1.0 - 2.0 * v / vp, -1.0, 1.0));
    int i = std::clamp(static_cast<int>(th * kSplineNodes / std::numbers::pi), 0, kSplineNodes - 1);
    while (i > 0 && nodes_[i] > v) --i;
    while (i < kSplineNodes - 1 && nodes_[i + 1] < v) ++i;
    double h = nodes_[i + 1] - nodes_[i];
    double t = (v - nodes_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * vals_[i] + h10 * h * slopes_[i] + h01 * vals_[i + 1] + h11 * h * slopes_[i + 1];
}

double Potentials::dF(double v) const {
    if (v <= 0 || v >= laws_.k.phi_plus) return 0.0;
    return std::sqrt(2.0 * std::max(0.0, Wstar(v)));
}

double Potentials::identity_residual(const std::vector<double>& u, const std::vector<double>& v) const {
    double worst = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        double w = W(u[i]), ws = Wstar(v[i]);
        auto p = penalties(u[i], v[i]);
        double lhs = w + p.R, rhs = p.P + ws;
        double scale = 1.0 + std::abs(lhs) + std::abs(rhs);
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

} // namespace pks
