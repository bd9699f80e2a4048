#include <doctest.h>

#include <cmath>

#include "pks/diagnostics.hpp"
#include "pks/errors.hpp"
#include "pks/recovery.hpp"

using namespace pks;

namespace {

struct Ref {
    Potentials pot{LawPair(3, 2, 1)};
    ProfileSolution omega = solve_profile(pot);
};

const Ref& ref() {
    static Ref r;
    return r;
}

} // namespace

TEST_CASE("interval target geometry") {
    auto g = Grid::line(100, 4);
    auto e = TargetSet::interval(0.0, 2.0, g);
    CHECK(e.lower_on_boundary);
    CHECK_FALSE(e.upper_on_boundary);
    CHECK(e.signed_distance(1.0, 0) == doctest::Approx(-1.0));
    CHECK(e.signed_distance(2.5, 0) == doctest::Approx(0.5));
    CHECK(e.signed_distance(0.0, 0) <= 0.0);
    CHECK(e.measure(g) == doctest::Approx(2.0));
    auto md = build_medium(g, {});
    CHECK(e.weighted_length(md) == doctest::Approx(1.0));
    CHECK_THROWS_AS(TargetSet::interval(0.0, 4.0, g), GeometryError);
    CHECK_THROWS_AS(TargetSet::disk(0, 0, -1), GeometryError);
}

TEST_CASE("glued profile branches") {
    const auto& r = ref();
    auto g = Grid::line(4000, 4);
    auto md = build_medium(g, {});
    auto e = TargetSet::interval(0.0, 2.0, g);
    const double eps = 0.04, se = 0.2;
    auto phi = build_phi(e, eps, 0.0, md, r.omega, 0.5);
    for (int i = 0; i < g.nx; ++i) {
        double z = (g.xc(i) - 2.0) / se;
        double v = phi[i];
        if (z < -2) CHECK(v == 0.5);
        else if (z >= 2) CHECK(v == 0.0);
        else if (std::abs(z) < 1) CHECK(v == doctest::Approx(r.omega.eval((g.xc(i) - 2.0) / eps)));
        CHECK(v >= 0.0);
        CHECK(v <= 0.5);
        if (i > 0) CHECK(v <= phi[i - 1]);
    }
    // positive tau moves the layer outwards
    auto phi2 = build_phi(e, eps, 1.0, md, r.omega, 0.5);
    double s1 = 0, s2 = 0;
    for (int i = 0; i < g.nx; ++i) s1 += phi[i], s2 += phi2[i];
    CHECK(s2 > s1);
}

TEST_CASE("density from concentration") {
    const auto& r = ref();
    auto rho = build_rho({0.0, 0.1, 0.3, 0.5}, r.pot);
    CHECK(rho[0] == 0.0);
    CHECK(rho[1] == 0.0);
    CHECK(rho[2] == doctest::Approx(0.3415650255319866).epsilon(1e-12));
    CHECK(rho[3] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("mass translation hits unit mass") {
    const auto& r = ref();
    auto g = Grid::line(4096, 4);
    auto md = build_medium(g, {});
    auto e = TargetSet::interval(0.0, 2.0, g);
    auto rp = mass_translate(e, 0.05, md, r.pot, r.omega);
    CHECK(std::abs(rp.mass - 1) <= 1e-12);
    CHECK(std::abs(total_mass(rp.rho, g) - 1) <= 1e-12);
    CHECK(std::abs(rp.tau) <= 2.0);
    SimParams p;
    p.epsilon = 0.05;
    SimState s;
    s.rho = rp.rho;
    s.phi = rp.phi;
    // rho = (f*)'(phi - a) puts the density penalty at zero
    CHECK(energy_report(s, p, md, r.pot).P_term <= 1e-12);
}

TEST_CASE("symmetric slab needs no shift") {
    const auto& r = ref();
    auto g = Grid::line(4000, 4);
    auto md = build_medium(g, {});
    auto e = TargetSet::interval(1.0, 3.0, g);
    auto phi = build_phi(e, 0.05, 0.0, md, r.omega, 0.5);
    for (int i = 0; i < g.nx / 2; ++i) CHECK(phi[i] == doctest::Approx(phi[g.nx - 1 - i]).epsilon(1e-12));
}

TEST_CASE("layer that does not fit") {
    const auto& r = ref();
    auto g = Grid::line(400, 4);
    auto md = build_medium(g, {});
    auto e = TargetSet::interval(0.0, 3.5, g);
    CHECK_THROWS_AS(build_phi(e, 0.2, 0.0, md, r.omega, 0.5), LayerOverflow);
}

TEST_CASE("mass bracket failure") {
    const auto& r = ref();
    auto g = Grid::line(2000, 4);
    auto md = build_medium(g, {});
    // rho_plus |E| = 1.5, no shift in [-2, 2] brings the mass to 1
    auto e = TargetSet::interval(0.0, 3.0, g);
    CHECK_THROWS_AS(mass_translate(e, 0.01, md, r.pot, r.omega), BracketError);
}

TEST_CASE("gamma sweep requires decreasing eps") {
    const auto& r = ref();
    auto g = Grid::line(512, 4);
    auto md = build_medium(g, {});
    auto e = TargetSet::interval(0.0, 2.0, g);
    CHECK_THROWS_AS(gamma_limsup_check(e, {0.1, 0.2}, md, r.pot, r.omega), ValidationError);
    auto rows = gamma_limsup_check(e, {0.1, 0.05}, md, r.pot, r.omega);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].rel_err < rows[0].rel_err);
    CHECK(rows[0].G0 == doctest::Approx(r.pot.tension().gamma * 0.5));
}

TEST_CASE("anisotropic slab weight") {
    auto g = Grid::plane(64, 16, 4, 1);
    MediumSpec ms;
    ms.a_profile = AProfile::Diagonal;
    ms.a_diag = {4.0, 1.0};
    auto md = build_medium(g, ms);
    auto e = TargetSet::interval(0.0, 2.0, g);
    // interface x = 2 of height 1 with normal e1, |e1|_A = 2
    CHECK(e.weighted_length(md) == doctest::Approx(2.0).epsilon(1e-12));
    auto d = TargetSet::disk(2, 0.5, 0.3);
    CHECK(d.measure(g) == doctest::Approx(M_PI * 0.09));
}

TEST_CASE("well prepared data checks the geometry") {
    const auto& r = ref();
    auto g = Grid::line(1000, 5);
    MediumSpec ms;
    ms.c_profile = CProfile::QuadraticMoat;
    ms.lambda = 4;
    ms.omega0 = {2.5, 3.5, 0, 0};
    auto md = build_medium(g, ms);
    auto e = TargetSet::interval(1.0, 3.0, g);
    CHECK_THROWS_AS(well_prepared_init(e, 0.05, md, r.pot, r.omega, true), GeometryError);
    auto md2 = build_medium(Grid::line(1000, 5), {});
    auto bad = TargetSet::interval(1.0, 2.0, g);
    CHECK_THROWS_AS(well_prepared_init(bad, 0.05, md2, r.pot, r.omega), GeometryError);
    auto s = well_prepared_init(e, 0.05, md2, r.pot, r.omega);
    CHECK(total_mass(s.rho, md2.grid) == doctest::Approx(1.0).epsilon(1e-14));
}
