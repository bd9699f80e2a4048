#pragma once

// arithmetic shared by the reference and the parallel kernels; both must
// go through these so the results agree bit for bit

#include <algorithm>
#include <cmath>

#include "pks/convex_laws.hpp"
#include "pks/errors.hpp"

namespace pks::detail {

// organism flux through a face, positive towards the higher index;
// density taken upwind of the potential gradient
inline double rho_flux(double muL, double muR, double rL, double rR, double k_over_h) {
    double dmu = muR - muL;
    double up = dmu > 0 ? rR : rL;
    return -k_over_h * up * dmu;
}

// A grad(phi) normal component on an x-face (swap roles for y-faces)
inline double phi_flux(double pL, double pR, double a_n, double a_t, double tL, double tR, double inv_h) {
    return a_n * (pR - pL) * inv_h + a_t * 0.5 * (tL + tR);
}

inline double centered(double m, double c, double p, bool lo_edge, bool hi_edge, double inv_2h) {
    double a = lo_edge ? c : m;
    double b = hi_edge ? c : p;
    return (b - a) * inv_2h;
}

// phi + s c g'(phi) = r, g' increasing so the root is unique
inline double solve_reaction(double r, double sc, const DestructionLaw& g, double guess) {
    if (g.q() == 2.0) return r / (1.0 + sc);
    double lo = std::min(r, 0.0), hi = std::max(r, 0.0);
    double x = std::clamp(guess, lo, hi);
    for (int it = 0; it < 80; ++it) {
        double h = x + sc * g.dg(x) - r;
        if (h == 0) return x;
        if (h > 0) hi = x; else lo = x;
        double d = 1.0 + sc * g.d2g(x);
        double xn = x - h / d;
        if (xn == x) return x;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        // Newton stalls at rounding level; stop there, not at a loose step size
        if (std::abs(xn - x) <= 4e-16 * (1.0 + std::abs(xn))) return xn;
        x = xn;
    }
    if (hi - lo <= 1e-10 * (1.0 + std::abs(x))) return x;
    throw NewtonDivergence("reaction solve did not converge");
}

} // namespace pks::detail
