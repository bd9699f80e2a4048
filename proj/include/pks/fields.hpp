#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pks {

// uniform cell-centred grid; 1D grids carry ny = 1 and dy = 1
struct Grid {
    int dim = 1;
    int nx = 1, ny = 1;
    double lx = 1, ly = 1;
    double dx = 1, dy = 1;
    double x0 = 0, y0 = 0;

    static Grid line(int nx, double lx, double x0 = 0);
    static Grid plane(int nx, int ny, double lx, double ly, double x0 = 0, double y0 = 0);

    size_t size() const { return static_cast<size_t>(nx) * ny; }
    size_t idx(int i, int j) const { return static_cast<size_t>(j) * nx + i; }
    double xc(int i) const { return x0 + (i + 0.5) * dx; }
    double yc(int j) const { return dim == 1 ? 0.0 : y0 + (j + 0.5) * dy; }
    double cell_volume() const { return dim == 1 ? dx : dx * dy; }
    double min_spacing() const { return dim == 1 ? dx : std::min(dx, dy); }
};

using Field = std::vector<double>;

enum class AProfile { Identity, Diagonal, Rotating };
enum class CProfile { Constant, QuadraticMoat, Quartic };

struct Box {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
};

struct MediumSpec {
    AProfile a_profile = AProfile::Identity;
    std::array<double, 2> a_diag{1.0, 1.0};
    double theta0 = 0, theta1 = 0, kappa = 1;  // rotating: theta(x) = theta0 + theta1 x
    CProfile c_profile = CProfile::Constant;
    double lambda = 0;
    Box omega0;
    double c_bar = 1;
};

struct Mat2 {
    double a11 = 1, a12 = 0, a22 = 1;
};

struct Medium {
    Grid grid;
    MediumSpec spec;
    double c_bar = 1;
    std::vector<double> a11, a12, a22, c;
    std::vector<std::uint8_t> omega0;
    double A_lo = 1, A_hi = 1;  // global eigenvalue bounds
    bool has_cross = false;
    double c_max = 1;

    Mat2 A_at(double x, double y) const;
    double c_at(double x, double y) const;
    double dist_omega0(double x, double y) const;
    double norm(size_t cell, double px, double py) const;
    double norm_at(double x, double y, double px, double py) const;
    double omega0_measure() const;
};

// SpecError when a nonconstant c would put the slow-decay set against the boundary
Medium build_medium(const Grid& grid, const MediumSpec& spec);

struct NondegeneracyReport {
    bool applicable = false;
    bool passes = false;
    bool quadratic_ok = false;
    bool laplacian_ok = false;
    bool regular_closed = false;
    double lambda_measured = 0;
    int quadratic_violations = 0;
    int laplacian_violations = 0;
    std::string note;
};

NondegeneracyReport check_nondegeneracy(const Medium& medium, double lambda_guess, double collar = 0.1);

// every masked cell has a masked 4-neighbour
bool mask_regular_closed(const Grid& g, const std::vector<std::uint8_t>& mask);

// rows: i, j, x, y, value with 17 significant digits
void write_field_csv(const std::string& path, const Grid& g, const Field& f);
Field read_field_csv(const std::string& path, const Grid& g);

} // namespace pks
