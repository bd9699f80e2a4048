#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "kernel_common.hpp"
#include "pks/diagnostics.hpp"
#include "pks/errors.hpp"
#include "pks/solver.hpp"

using namespace pks;

namespace {

SimState bump(const Grid& g, unsigned seed) {
    SimState s;
    s.rho.resize(g.size());
    s.phi.resize(g.size());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-0.05, 0.05);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double x = g.xc(i) - 0.5 * g.lx, y = g.dim == 2 ? g.yc(j) - 0.5 * g.ly : 0.0;
            double r = std::sqrt(x * x + y * y);
            double w = 0.5 * (1 - std::tanh((r - 0.3 * g.lx) / 0.15));
            s.rho[g.idx(i, j)] = 0.5 * w * (1 + U(rng));
            s.phi[g.idx(i, j)] = 0.5 * w + U(rng);
        }
    return s;
}

bool same_bits(const Field& a, const Field& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST_CASE("parallel kernel matches the reference bit for bit") {
    Potentials pot(LawPair(3, 2, 1));
    SimParams p;
    p.epsilon = 0.1;
    for (int dim : {1, 2}) {
        Grid g = dim == 1 ? Grid::line(300, 4) : Grid::plane(48, 40, 4, 3.5);
        MediumSpec ms;
        if (dim == 2) {
            ms.a_profile = AProfile::Rotating;
            ms.theta0 = 0.2;
            ms.theta1 = 0.7;
            ms.kappa = 2.5;
            ms.c_profile = CProfile::QuadraticMoat;
            ms.lambda = 3;
            ms.omega0 = {1.0, 3.0, 0.8, 2.7};
        }
        auto md = build_medium(g, ms);
        SimState a = bump(g, 3), b = a;
        Workspace wa, wb;
        StepOptions opt;
        opt.dissipation = true;
        for (int k = 0; k < 25; ++k) {
            auto ia = step_reference(a, p, md, pot, wa, opt);
            auto ib = step(b, p, md, pot, wb, opt);
            CHECK(ia.dt == ib.dt);
            CHECK(ia.dissipation == ib.dissipation);
        }
        CHECK(same_bits(a.rho, b.rho));
        CHECK(same_bits(a.phi, b.phi));
        CHECK(a.t == b.t);
    }
}

TEST_CASE("mass, positivity and energy decay") {
    Potentials pot(LawPair(3, 2, 1));
    Grid g = Grid::plane(32, 32, 2, 2);
    auto md = build_medium(g, {});
    SimParams p;
    p.epsilon = 0.1;
    p.t_end = 0.02;
    SimState s = bump(g, 11);
    double m0 = total_mass(s.rho, g);
    double e_prev = energy_total(s, p, md, pot);
    bool decreasing = true;
    double rho_min = 1;
    run(s, p, md, pot, [&](const SimState& st, const StepInfo&, long) {
        double e = energy_total(st, p, md, pot);
        if (e > e_prev + 1e-12 * std::abs(e_prev)) decreasing = false;
        e_prev = e;
        for (double r : st.rho) rho_min = std::min(rho_min, r);
    });
    CHECK(decreasing);
    CHECK(rho_min >= 0.0);
    CHECK(std::abs(total_mass(s.rho, g) - m0) <= 1e-13);
    CHECK(s.t == doctest::Approx(0.02));
}

TEST_CASE("constant wells are steady") {
    Potentials pot(LawPair(3, 2, 1));
    Grid g = Grid::line(50, 1);
    auto md = build_medium(g, {});
    SimParams p;
    p.epsilon = 0.05;
    SimState s;
    s.rho.assign(g.size(), 0.5);
    s.phi.assign(g.size(), 0.5);
    Workspace ws;
    for (int k = 0; k < 20; ++k) step(s, p, md, pot, ws);
    for (size_t i = 0; i < g.size(); ++i) {
        CHECK(s.rho[i] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(s.phi[i] == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("fixed step beyond the positivity budget") {
    Potentials pot(LawPair(3, 2, 1));
    Grid g = Grid::line(100, 1);
    auto md = build_medium(g, {});
    SimParams p;
    p.epsilon = 0.01;
    p.dt = 1.0;
    SimState s = bump(g, 5);
    Workspace ws;
    CHECK_THROWS_AS(step(s, p, md, pot, ws), CflViolation);
    CHECK_THROWS_AS(step_reference(s, p, md, pot, ws), CflViolation);
}

TEST_CASE("reaction solve for q = 3") {
    DestructionLaw g(3);
    for (double r : {-0.7, -0.01, 0.0, 0.2, 1.5})
        for (double sc : {0.1, 10.0, 1e4}) {
            double x = detail::solve_reaction(r, sc, g, 0.3);
            CHECK(x + sc * g.dg(x) == doctest::Approx(r).epsilon(1e-10).scale(1e-12));
        }
    DestructionLaw g2(2);
    CHECK(detail::solve_reaction(1.0, 1.0, g2, 0) == doctest::Approx(0.5));
}

TEST_CASE("q = 3 run stays finite and positive") {
    Potentials pot(LawPair(4, 3, 1));
    Grid g = Grid::line(128, 2);
    auto md = build_medium(g, {});
    SimParams p;
    p.epsilon = 0.1;
    p.t_end = 0.01;
    SimState s = bump(g, 9);
    auto r = run(s, p, md, pot);
    CHECK(r.steps > 0);
    for (size_t i = 0; i < g.size(); ++i) {
        CHECK(std::isfinite(s.phi[i]));
        CHECK(s.rho[i] >= 0.0);
    }
}
