#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "pks/errors.hpp"
#include "pks/fields.hpp"

using namespace pks;

namespace {

MediumSpec moat(double lambda, CProfile prof = CProfile::QuadraticMoat) {
    MediumSpec s;
    s.c_profile = prof;
    s.lambda = lambda;
    s.omega0 = {1.0, 3.0, 1.0, 3.0};
    return s;
}

} // namespace

TEST_CASE("grid geometry") {
    auto g = Grid::plane(8, 4, 2.0, 1.0);
    CHECK(g.size() == 32);
    CHECK(g.dx == doctest::Approx(0.25));
    CHECK(g.xc(0) == doctest::Approx(0.125));
    CHECK(g.cell_volume() == doctest::Approx(0.0625));
    auto l = Grid::line(10, 5.0);
    CHECK(l.yc(3) == 0.0);
    CHECK(l.cell_volume() == doctest::Approx(0.5));
    CHECK_THROWS_AS(Grid::line(1, 1.0), SpecError);
}

TEST_CASE("anisotropic norms") {
    auto g = Grid::plane(4, 4, 1, 1);
    auto md = build_medium(g, {});
    CHECK(md.norm(0, 3, 4) == doctest::Approx(5.0));
    MediumSpec s;
    s.a_profile = AProfile::Diagonal;
    s.a_diag = {4.0, 1.0};
    auto md2 = build_medium(g, s);
    CHECK(md2.norm(5, 1, 0) == doctest::Approx(2.0));
    CHECK(md2.norm(5, 0, 1) == doctest::Approx(1.0));
    CHECK(md2.A_lo == doctest::Approx(1.0));
    CHECK(md2.A_hi == doctest::Approx(4.0));
}

TEST_CASE("rotating diffusivity keeps its eigenvalues") {
    MediumSpec s;
    s.a_profile = AProfile::Rotating;
    s.theta0 = 0.3;
    s.theta1 = 0.8;
    s.kappa = 3.0;
    auto md = build_medium(Grid::plane(16, 16, 2, 2), s);
    CHECK(md.has_cross);
    for (size_t k = 0; k < md.a11.size(); k += 7) {
        double tr = md.a11[k] + md.a22[k];
        double det = md.a11[k] * md.a22[k] - md.a12[k] * md.a12[k];
        CHECK(tr == doctest::Approx(4.0));
        CHECK(det == doctest::Approx(3.0));
    }
}

TEST_CASE("quadratic moat destruction rate") {
    auto g = Grid::plane(40, 40, 4, 4);
    auto md = build_medium(g, moat(2.0));
    CHECK(md.c_at(2.0, 2.0) == doctest::Approx(1.0));
    CHECK(md.c_at(0.5, 2.0) == doctest::Approx(1.0 + 0.5 * 2.0 * 0.25));
    CHECK(md.c_at(0.5, 0.5) == doctest::Approx(1.0 + 0.5 * 2.0 * 0.5));
    CHECK(md.omega0_measure() == doctest::Approx(4.0));
    // collar wide enough to hold cells whose stencil clears the set along a face
    auto rep = check_nondegeneracy(md, 2.0, 0.3);
    CHECK(rep.applicable);
    CHECK(rep.passes);
    CHECK(check_nondegeneracy(md, 2.0).passes);
    CHECK(rep.lambda_measured == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("quartic destruction rate is degenerate") {
    auto md = build_medium(Grid::plane(40, 40, 4, 4), moat(2.0, CProfile::Quartic));
    auto rep = check_nondegeneracy(md, 2.0);
    CHECK(rep.applicable);
    CHECK_FALSE(rep.passes);
    CHECK(rep.quadratic_violations > 0);
    auto cst = build_medium(Grid::plane(8, 8, 1, 1), {});
    CHECK_FALSE(check_nondegeneracy(cst, 1.0).applicable);
}

TEST_CASE("invalid media") {
    auto g = Grid::plane(20, 20, 4, 4);
    auto s = moat(2.0);
    s.omega0 = {0.0, 3.0, 1.0, 3.0};
    CHECK_THROWS_AS(build_medium(g, s), SpecError);
    CHECK_THROWS_AS(build_medium(g, moat(0.0)), SpecError);
    MediumSpec d;
    d.a_profile = AProfile::Diagonal;
    d.a_diag = {1.0, -1.0};
    CHECK_THROWS_AS(build_medium(g, d), SpecError);
}

TEST_CASE("regular closed masks") {
    auto g = Grid::plane(4, 4, 1, 1);
    std::vector<std::uint8_t> m(16, 0);
    m[g.idx(1, 1)] = 1;
    CHECK_FALSE(mask_regular_closed(g, m));
    m[g.idx(2, 1)] = 1;
    CHECK(mask_regular_closed(g, m));
}

TEST_CASE("field csv round trip") {
    auto g = Grid::plane(5, 3, 1, 1);
    Field f(g.size());
    for (size_t k = 0; k < f.size(); ++k) f[k] = std::sin(1.0 + k) / 3.0;
    auto path = (std::filesystem::temp_directory_path() / "pks_field_rt.csv").string();
    write_field_csv(path, g, f);
    auto back = read_field_csv(path, g);
    std::remove(path.c_str());
    REQUIRE(back.size() == f.size());
    for (size_t k = 0; k < f.size(); ++k) CHECK(back[k] == f[k]);
    CHECK_THROWS_AS(read_field_csv(path, g), SpecError);
}
