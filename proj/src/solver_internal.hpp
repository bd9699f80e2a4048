#pragma once

#include <algorithm>
#include <string>

#include "pks/errors.hpp"
#include "pks/parallel.hpp"
#include "pks/solver.hpp"

namespace pks::detail {

// dmax: largest rho f''(rho); rate_max: largest organism outflow rate
inline double select_dt(double t, double dmax, double rate_max, const SimParams& p, const Medium& md,
                        const StepOptions& opt) {
    const Grid& g = md.grid;
    const double h2 = g.min_spacing() * g.min_spacing();
    const double d = g.dim;
    double dt;
    if (p.dt > 0) {
        dt = p.dt;
        if (dt * rate_max > 1.0)
            throw CflViolation("fixed dt " + std::to_string(dt) + " exceeds the positivity budget " +
                               std::to_string(1.0 / rate_max));
    } else {
        double dt_rho = dmax > 0 ? p.cfl * p.epsilon * p.alpha0 * h2 / (2 * d * dmax) : 1e300;
        double dt_phi = p.cfl * h2 / (2 * d * md.A_hi);
        double dt_pos = rate_max > 0 ? 0.9 / rate_max : 1e300;
        dt = std::min({dt_rho, dt_phi, dt_pos});
    }
    if (t + dt > opt.t_stop) dt = opt.t_stop - t;
    return dt;
}

// the fluxes telescope, but over millions of steps the rounding in rho - dt div F
// random-walks the total; pull it back to the carried mass
inline void restore_mass(SimState& s, const Grid& g) {
    const double m = pairwise_sum(s.rho) * g.cell_volume();
    if (s.mass > 0 && m > 0) {
        const double scale = s.mass / m;
        for (auto& v : s.rho) v *= scale;
    } else {
        s.mass = m;
    }
}

} // namespace pks::detail
