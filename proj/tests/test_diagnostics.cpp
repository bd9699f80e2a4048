#include <doctest.h>

#include <cmath>

#include "pks/diagnostics.hpp"
#include "pks/errors.hpp"
#include "pks/profile.hpp"
#include "pks/recovery.hpp"

using namespace pks;

namespace {

SimState layer_state(const Grid& g, const Medium& md, const Potentials& pot, double eps) {
    auto omega = solve_profile(pot);
    auto e = TargetSet::interval(0.0, 2.0, g);
    SimState s;
    s.phi = build_phi(e, eps, 0.0, md, omega, pot.k().phi_plus);
    s.rho = build_rho(s.phi, pot);
    return s;
}

} // namespace

TEST_CASE("both energy forms agree") {
    Potentials pot(LawPair(3, 2, 1));
    auto g = Grid::plane(24, 20, 2, 2);
    MediumSpec ms;
    ms.c_profile = CProfile::QuadraticMoat;
    ms.lambda = 2;
    ms.omega0 = {0.5, 1.5, 0.5, 1.5};
    auto md = build_medium(g, ms);
    SimParams p;
    p.epsilon = 0.07;
    SimState s;
    s.rho.resize(g.size());
    s.phi.resize(g.size());
    for (size_t k = 0; k < g.size(); ++k) {
        s.rho[k] = 0.3 + 0.2 * std::sin(0.7 * k);
        s.phi[k] = 0.25 + 0.3 * std::cos(1.3 * k);
    }
    auto e = energy_report(s, p, md, pot);
    CHECK(e.G_eps_formA == doctest::Approx(e.G_eps_formB).epsilon(1e-12));
    CHECK(energy_total(s, p, md, pot) == doctest::Approx(e.G_eps_formA).epsilon(1e-12));
    CHECK(e.obstacle_term > 0.0);
    CHECK(e.mass == doctest::Approx(total_mass(s.rho, g)));
}

TEST_CASE("constant state energy") {
    Potentials pot(LawPair(3, 2, 1));
    auto g = Grid::plane(10, 10, 2, 3);
    auto md = build_medium(g, {});
    SimParams p;
    p.epsilon = 0.2;
    SimState s;
    s.rho.assign(g.size(), 1.0);
    s.phi.assign(g.size(), 0.0);
    auto e = energy_report(s, p, md, pot);
    double expect = 6.0 * (pot.W(1.0) + pot.penalties(1.0, 0.0).R) / 0.2;
    CHECK(e.G_eps_formA == doctest::Approx(expect).epsilon(1e-12));
    CHECK(e.dirichlet_term == 0.0);

    s.rho.assign(g.size(), 0.5);
    s.phi.assign(g.size(), 0.5);
    CHECK(std::abs(energy_total(s, p, md, pot)) < 1e-13);
    auto pr = approx_pressure(s, p, md, pot);
    for (double v : pr.pi) CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("one-dimensional layer perimeter") {
    Potentials pot(LawPair(3, 2, 1));
    auto g = Grid::line(4096, 4);
    auto md = build_medium(g, {});
    auto s = layer_state(g, md, pot, 0.05);
    double expect = pot.tension().gamma * pot.k().phi_plus;
    CHECK(mm_perimeter(s, md, pot) == doctest::Approx(expect).epsilon(1e-4));
    SimParams p;
    p.epsilon = 0.05;
    auto eq = equipartition_residuals(s, p, md, pot);
    CHECK(eq.r1 < 1e-12);
    CHECK(eq.r2 < 5e-2);
    auto cs = extract_contours(s.phi, g, 0.25);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0][0].x == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("pressure is mean free on each component") {
    Potentials pot(LawPair(3, 2, 1));
    auto g = Grid::plane(40, 20, 4, 2);
    MediumSpec ms;
    ms.c_profile = CProfile::QuadraticMoat;
    ms.lambda = 1;
    ms.omega0 = {0.5, 3.5, 0.5, 1.5};
    auto md = build_medium(g, ms);
    SimParams p;
    p.epsilon = 0.1;
    SimState s;
    s.rho.resize(g.size());
    s.phi.resize(g.size());
    for (size_t k = 0; k < g.size(); ++k) {
        s.rho[k] = 0.4 + 0.1 * std::sin(0.37 * k);
        s.phi[k] = 0.3;
    }
    auto pr = approx_pressure(s, p, md, pot);
    CHECK(pr.components == 1);
    CHECK(pr.worst_component_mean < 1e-13);
    CHECK(pr.weighted_L1 > 0.0);
}

TEST_CASE("component labelling") {
    auto g = Grid::plane(6, 4, 1, 1);
    std::vector<std::uint8_t> m(g.size(), 0);
    m[g.idx(0, 0)] = m[g.idx(1, 0)] = 1;
    m[g.idx(4, 2)] = m[g.idx(4, 3)] = m[g.idx(5, 3)] = 1;
    m[g.idx(2, 2)] = 1;
    std::vector<int> lab;
    CHECK(label_components(g, m, lab) == 3);
    CHECK(lab[g.idx(0, 0)] == lab[g.idx(1, 0)]);
    CHECK(lab[g.idx(4, 2)] == lab[g.idx(5, 3)]);
    CHECK(lab[g.idx(3, 3)] == -1);
}

TEST_CASE("disk contour and circle fit") {
    auto g = Grid::plane(64, 64, 4, 4);
    Field phi(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double r = std::hypot(g.xc(i) - 2.1, g.yc(j) - 1.9);
            phi[g.idx(i, j)] = 0.25 * (1 - std::tanh((r - 1.0) / 0.2));
        }
    std::vector<bool> closed;
    auto cs = extract_contours(phi, g, 0.25, &closed);
    REQUIRE(cs.size() == 1);
    CHECK(closed[0]);
    auto c = fit_circle(cs[0]);
    CHECK(c.cx == doctest::Approx(2.1).epsilon(1e-3));
    CHECK(c.cy == doctest::Approx(1.9).epsilon(1e-3));
    CHECK(c.r == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(c.eccentricity < 0.05);
    CHECK_THROWS_AS(fit_circle({{0, 0}, {1, 1}}), ShapeError);
}

TEST_CASE("empty level set") {
    Potentials pot(LawPair(3, 2, 1));
    auto g = Grid::plane(8, 8, 1, 1);
    auto md = build_medium(g, {});
    SimState s;
    s.rho.assign(g.size(), 0.0);
    s.phi.assign(g.size(), 0.0);
    CHECK(extract_contours(s.phi, g, 0.25).empty());
    CHECK_THROWS_AS(interface_geometry(s, s, md, pot), EmptyInterface);
}

TEST_CASE("translating layer normal velocity") {
    Potentials pot(LawPair(3, 2, 1));
    auto g = Grid::line(2048, 4);
    auto md = build_medium(g, {});
    auto omega = solve_profile(pot);
    const double eps = 0.05, dt = 1e-3, speed = 0.3;
    SimState a, b;
    auto e0 = TargetSet::interval(0.0, 2.0, g), e1 = TargetSet::interval(0.0, 2.0 + speed * dt, g);
    a.phi = build_phi(e0, eps, 0.0, md, omega, 0.5);
    b.phi = build_phi(e1, eps, 0.0, md, omega, 0.5);
    a.rho = build_rho(a.phi, pot);
    b.rho = build_rho(b.phi, pot);
    b.t = dt;
    auto geo = interface_geometry(a, b, md, pot);
    REQUIRE(geo.normal_velocity.size() == 1);
    CHECK(geo.normal_velocity[0] == doctest::Approx(speed).epsilon(0.02));
}
