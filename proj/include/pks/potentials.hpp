#pragma once

#include <memory>
#include <vector>

#include "pks/convex_laws.hpp"

namespace pks {

struct SurfaceTension {
    double gamma = 0;
    double gamma0 = 0;
};

struct Penalties {
    double P = 0;
    double R = 0;
};

// Adaptive Gauss-Kronrod over [a,b] with geometric panels at both ends,
// where the integrands of interest flatten out.
double integrate_layered(const std::function<double(double)>& fn, double a, double b, double rel_tol,
                         double abs_tol, double* err_out = nullptr);

class Potentials {
public:
    explicit Potentials(const LawPair& laws);

    const LawPair& laws() const { return laws_; }
    const DerivedConstants& k() const { return laws_.k; }

    // double well in the density, zeros {0, rho_plus}
    double W(double u) const;
    // double well in the concentration, zeros {0, phi_plus}
    double Wstar(double v) const;
    double WstarC(double c, double v) const { return Wstar(v) + (c - laws_.k.c_bar) * laws_.g.g(v); }
    double dWstar(double v) const;

    Penalties penalties(double u, double v) const;

    // integral of sqrt(2 W*) from 0, saturated outside [0, phi_plus];
    // F uses the cached spline, F_exact integrates
    double F(double v) const;
    double F_exact(double v) const;
    double dF(double v) const;

    SurfaceTension tension() const { return tension_; }

    // max over samples of |(W + R) - (P + W*)|
    double identity_residual(const std::vector<double>& u, const std::vector<double>& v) const;

private:
    LawPair laws_;
    SurfaceTension tension_;
    double F_plus_ = 0;
    std::vector<double> nodes_, vals_, slopes_;
};

} // namespace pks
