#pragma once

#include <vector>

#include "pks/config.hpp"
#include "pks/fields.hpp"
#include "pks/potentials.hpp"
#include "pks/profile.hpp"
#include "pks/solver.hpp"

namespace pks {

// interval (slab in 2D) or disk; boundary pieces lying on the domain boundary are not interfaces
struct TargetSet {
    enum class Kind { Interval, Disk } kind = Kind::Interval;
    double x0 = 0, x1 = 0;
    double cx = 0, cy = 0, r = 0;
    bool lower_on_boundary = false, upper_on_boundary = false;

    static TargetSet interval(double x0, double x1, const Grid& g);
    static TargetSet disk(double cx, double cy, double r);
    static TargetSet from(const TargetSection& t, const Grid& g);

    // <= 0 on the closure of E, distance to the interior part of the boundary
    double signed_distance(double x, double y) const;
    // outer unit normal of the nearest interface point
    void normal(double x, double y, double& nx, double& ny) const;
    double measure(const Grid& g) const;
    // distance from the interior interface to the domain boundary and to the slow-decay set boundary
    double clearance(const Medium& md, bool check_omega0) const;
    // weighted interface length int |nu|_A ds (a point count in 1D)
    double weighted_length(const Medium& md) const;
};

struct RecoveryPair {
    Field phi, rho;
    double tau = 0;
    double epsilon = 0;
    double mass = 0;
};

// glued profile: ramps on 1 <= |z| <= 2, rescaled optimal profile for |z| < 1,
// z = d/sqrt(eps) - sqrt(eps) tau
Field build_phi(const TargetSet& e, double epsilon, double tau, const Medium& md, const ProfileSolution& omega,
                double phi_plus, bool check_omega0 = true);

Field build_rho(const Field& phi, const Potentials& pot);

// bisection on tau in [-2, 2] for unit mass; BracketError when the bracket fails
RecoveryPair mass_translate(const TargetSet& e, double epsilon, const Medium& md, const Potentials& pot,
                            const ProfileSolution& omega, bool check_omega0 = true);

struct GammaRow {
    double eps = 0, G_eps = 0, G0 = 0, rel_err = 0, tau = 0, mass = 0, P_term = 0, F_ceps = 0;
};

// pre: eps_list strictly decreasing
std::vector<GammaRow> gamma_limsup_check(const TargetSet& e, const std::vector<double>& eps_list, const Medium& md,
                                         const Potentials& pot, const ProfileSolution& omega);

// GeometryError if rho_plus |Omega0| <= 1 or the target has the wrong mass;
// the density is rescaled to unit mass exactly
SimState well_prepared_init(const TargetSet& e, double epsilon, const Medium& md, const Potentials& pot,
                            const ProfileSolution& omega, bool allow_outside = false);

} // namespace pks
