#pragma once

#include <vector>

#include "pks/potentials.hpp"

namespace pks {

struct ProfileOptions {
    double norm_p_A = 1.0;
    double c_value = -1;  // c(x); negative means c_bar (x inside the slow-decay set)
    double z_min = -60;
    double z_max = 60;
    double tol = 1e-9;
    double max_step = 0.05;
    double stop_gap = 1e-10;
    // W* near phi_plus is a difference of O(1) terms, so stop well above roundoff there
    double stop_gap_plus = 1e-6;
};

struct ProfileSolution {
    std::vector<double> z, omega, domega;  // sorted by z, domega is the ODE right-hand side
    double anchor = 0;
    double norm_p_A = 1;
    double c_value = 0;
    double phi_plus = 0;
    double tail_rate_zero = 0;   // exponential fit of log(omega), last two decades
    double tail_slope_zero = 0;  // log-log slope, same window (algebraic tails)
    double tail_rate_plus = 0;   // exponential fit of log(phi_plus - omega)
    double tail_fit_r2_plus = 0;
    double max_residual = 0;     // defect of the Hermite interpolant at interval midpoints
    size_t zero_index = 0;       // position of z = 0

    double eval(double zz) const;
    double deriv(double zz) const;
};

ProfileSolution solve_profile(const Potentials& pot, const ProfileOptions& opt = {});

struct DecayReport {
    bool zero_bound_ok = false;
    bool plus_lower_ok = false;       // phi_plus - omega >= (phi_plus/2) e^{k z}, z <= 0
    bool plus_upper_as_printed = false;
    bool algebraic = false;
    double Z0 = 0, omega0 = 0;
    double bound_rate_zero = 0, bound_rate_plus = 0;
    double measured_rate_zero = 0, measured_slope_zero = 0, measured_rate_plus = 0;
    double worst_zero_ratio = 0;
};

DecayReport verify_decay_bounds(const ProfileSolution& sol, const Potentials& pot);

// integral of W*_c(omega) + |p|_A^2/2 omega'^2 over the sampled range
double profile_energy(const ProfileSolution& sol, const Potentials& pot);

// least-squares slope of y against x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y, double* r2 = nullptr);

} // namespace pks
