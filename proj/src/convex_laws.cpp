#include "pks/convex_laws.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pks/errors.hpp"

namespace pks {

PressureLaw::PressureLaw(double m) : m_(m), mp_(m / (m - 1.0)) {
    if (!(m > 1.0)) throw DomainError("pressure exponent must satisfy m > 1, got " + std::to_string(m));
    pow_m_ = PowFn(m);
    pow_m1_ = PowFn(m - 1.0);
    pow_m2_ = PowFn(m - 2.0);
    pow_mp_ = PowFn(mp_);
    pow_inv_ = PowFn(1.0 / (m - 1.0));
}

double PressureLaw::f(double u) const {
    if (u < 0) return std::numeric_limits<double>::infinity();
    return pow_m_(u) / (m_ - 1.0);
}

double PressureLaw::df(double u) const {
    if (u < 0) throw DomainError("f' evaluated at negative density");
    return mp_ * pow_m1_(u);
}

double PressureLaw::d2f(double u) const {
    if (u < 0) throw DomainError("f'' evaluated at negative density");
    if (u == 0) return m_ < 2 ? std::numeric_limits<double>::infinity() : (m_ == 2 ? 2.0 : 0.0);
    return m_ * pow_m2_(u);
}

double PressureLaw::fstar(double w) const {
    if (w <= 0) return 0.0;
    return pow_mp_(w / mp_);
}

double PressureLaw::dfstar(double w) const {
    if (w <= 0) return 0.0;
    return pow_inv_(w / mp_);
}

DestructionLaw::DestructionLaw(double q) : q_(q), qp_(q / (q - 1.0)) {
    if (!(q >= 2.0)) throw DomainError("destruction exponent must satisfy q >= 2, got " + std::to_string(q));
    pow_q_ = PowFn(q);
    pow_q1_ = PowFn(q - 1.0);
    pow_q2_ = PowFn(q - 2.0);
    pow_qp_ = PowFn(qp_);
    pow_qp1_ = PowFn(qp_ - 1.0);
}

double DestructionLaw::g(double v) const { return pow_q_(std::abs(v)) / q_; }

double DestructionLaw::dg(double v) const {
    double r = pow_q1_(std::abs(v));
    return v < 0 ? -r : r;
}

double DestructionLaw::d2g(double v) const {
    if (q_ == 2.0) return 1.0;
    return (q_ - 1.0) * pow_q2_(std::abs(v));
}

double DestructionLaw::dg_inv(double r) const {
    double v = pow_qp1_(std::abs(r));
    return r < 0 ? -v : v;
}

double DestructionLaw::gstar(double u) const { return pow_qp_(std::abs(u)) / qp_; }

double DestructionLaw::dgstar(double u) const { return dg_inv(u); }

DerivedConstants derive_constants(const PressureLaw& f, const DestructionLaw& g, double c_bar) {
    if (!(c_bar > 0)) throw DomainError("c_bar must be positive");
    double qp = g.q_prime(), m = f.m();
    if (!(m > qp))
        throw CompatibilityError("need m > q' = " + std::to_string(qp) + ", got m = " + std::to_string(m));
    DerivedConstants k;
    k.c_bar = c_bar;
    // minimiser of (f(u) - c g*(u/c))/u
    k.rho_plus = std::pow(std::pow(c_bar, 1.0 - qp) * (1.0 - 1.0 / qp), 1.0 / (m - qp));
    double u = k.rho_plus;
    double h = f.f(u) - c_bar * g.gstar(u / c_bar);
    k.a = -h / u;
    k.phi_plus = g.dgstar(u / c_bar);
    return k;
}

LawPair::LawPair(double m, double q, double c_bar) : f(m), g(q), k(derive_constants(f, g, c_bar)) {}

double LawPair::cg_star(double u) const { return k.c_bar * g.gstar(u / k.c_bar); }

double numeric_conjugate(const std::function<double(double)>& law, double w, double u_max, double tol) {
    auto h = [&](double u) { return u * w - law(u); };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = 0.0, hi = u_max;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double h1 = h(x1), h2 = h(x2);
    while (hi - lo > tol) {
        if (h1 < h2) {
            lo = x1; x1 = x2; h1 = h2;
            x2 = lo + gr * (hi - lo); h2 = h(x2);
        } else {
            hi = x2; x2 = x1; h2 = h1;
            x1 = hi - gr * (hi - lo); h1 = h(x1);
        }
    }
    double u = 0.5 * (lo + hi);
    double d = std::max(1e-6 * u_max, 10 * tol);
    if (u > u_max - d && h(u_max) >= h(u_max - d))
        throw BracketError("conjugate maximiser reaches u_max; enlarge the bracket");
    return std::max({h(u), h(0.0), h(lo), h(hi)});
}

} // namespace pks
