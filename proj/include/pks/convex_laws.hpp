#pragma once

#include <functional>

#include "pks/powfn.hpp"

namespace pks {

// f(u) = u^m/(m-1) on u >= 0, +inf below
class PressureLaw {
public:
    explicit PressureLaw(double m);

    double m() const { return m_; }
    double m_prime() const { return mp_; }

    double f(double u) const;
    double df(double u) const;
    double d2f(double u) const;
    double fstar(double w) const;
    double dfstar(double w) const;

    // unchecked versions for inner loops, u >= 0 assumed
    double df_fast(double u) const { return mp_ * pow_m1_(u); }
    double f_fast(double u) const { return pow_m_(u) / (m_ - 1.0); }

private:
    double m_, mp_;
    PowFn pow_m_, pow_m1_, pow_m2_, pow_mp_, pow_inv_;
};

// g(v) = |v|^q/q
class DestructionLaw {
public:
    explicit DestructionLaw(double q);

    double q() const { return q_; }
    double q_prime() const { return qp_; }

    double g(double v) const;
    double dg(double v) const;
    double d2g(double v) const;
    double dg_inv(double r) const;
    double gstar(double u) const;
    double dgstar(double u) const;

private:
    double q_, qp_;
    PowFn pow_q_, pow_q1_, pow_q2_, pow_qp_, pow_qp1_;
};

struct DerivedConstants {
    double a = 0;
    double rho_plus = 0;
    double phi_plus = 0;
    double c_bar = 0;
};

// m > q', c_bar > 0; throws CompatibilityError / DomainError
DerivedConstants derive_constants(const PressureLaw& f, const DestructionLaw& g, double c_bar);

struct LawPair {
    PressureLaw f;
    DestructionLaw g;
    DerivedConstants k;

    LawPair(double m, double q, double c_bar);

    // conjugate of c_bar*g
    double cg_star(double u) const;
};

// sup_{0<=u<=u_max} {u w - law(u)} by golden section; BracketError if the
// maximiser sits on u_max
double numeric_conjugate(const std::function<double(double)>& law, double w, double u_max,
                         double tol = 1e-10);

} // namespace pks
