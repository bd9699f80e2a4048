#pragma once

#include <vector>

#include "pks/fields.hpp"
#include "pks/potentials.hpp"
#include "pks/solver.hpp"

namespace pks {

struct EnergyReport {
    double W_term = 0, R_term = 0, dirichlet_term = 0, obstacle_term = 0, P_term = 0, Wstar_term = 0;
    double G_eps_formA = 0, G_eps_formB = 0;
    double F_ceps = 0, F_eps = 0;
    double D_eps = 0;
    double mass = 0;
};

// centred differences with reflected ghosts
void gradient(const Field& u, const Grid& g, Field& gx, Field& gy);

EnergyReport energy_report(const SimState& s, const SimParams& p, const Medium& md, const Potentials& pot);

// form A total only; cheap enough to call every step
double energy_total(const SimState& s, const SimParams& p, const Medium& md, const Potentials& pot);

struct Equipartition {
    double r1 = 0, r2 = 0, r3 = 0;
};

Equipartition equipartition_residuals(const SimState& s, const SimParams& p, const Medium& md,
                                      const Potentials& pot);

// int |grad F(phi)|_A dx; tends to the weighted perimeter energy
double mm_perimeter(const SimState& s, const Medium& md, const Potentials& pot);

struct Point2 {
    double x = 0, y = 0;
};

struct InterfaceGeometry {
    std::vector<std::vector<Point2>> contours;  // polylines (2D) or single points (1D)
    std::vector<bool> closed;
    double perimeter_mm = 0;
    double perimeter_geom = 0;  // arclength weighted by |nu|_A
    std::vector<Point2> sample_points;
    std::vector<double> normal_velocity, curvature;
};

// level set phi = level; linear crossings in 1D, marching squares in 2D
std::vector<std::vector<Point2>> extract_contours(const Field& phi, const Grid& g, double level,
                                                  std::vector<bool>* closed = nullptr);

// EmptyInterface if the level set is empty
InterfaceGeometry interface_geometry(const SimState& prev, const SimState& cur, const Medium& md,
                                     const Potentials& pot);

struct PressureReport {
    Field pi;  // rho (f'(rho) + a - phi) / eps
    Field p;   // pi with each slow-decay component made mean free
    double p_L1 = 0;
    double weighted_L1 = 0;  // || pi (c - c_bar)^{1/2} ||_{L1}
    int components = 0;
    double worst_component_mean = 0;
};

PressureReport approx_pressure(const SimState& s, const SimParams& p, const Medium& md, const Potentials& pot);

// 4-neighbour components of a mask, labels from 0, -1 outside
int label_components(const Grid& g, const std::vector<std::uint8_t>& mask, std::vector<int>& labels);

struct CircleFit {
    double cx = 0, cy = 0, r = 0;
    double eccentricity = 0;
    double area = 0;
};

CircleFit fit_circle(const std::vector<Point2>& pts);

struct DiskReport {
    CircleFit circle;
    double p_bar = 0;
    double dnu_p = 0;
    double residual = 0;  // p + (beta0 gamma0/alpha0) dp/dnu - rho_plus gamma0 kappa
    double ratio = 0;     // p_bar r / (rho_plus gamma0)
};

// ShapeError if the contour is not near circular
DiskReport fbp_residual_disk(const SimState& s, const SimParams& p, const Medium& md, const Potentials& pot);

} // namespace pks
