#include <doctest.h>

#include "pks/config.hpp"
#include "pks/errors.hpp"

using namespace pks;

TEST_CASE("minimal configuration") {
    auto c = parse_config_text("[laws]\nm = 3\nq = 2\ncbar = 1\n");
    REQUIRE(c.laws);
    CHECK(c.laws->m == 3);
    CHECK_FALSE(c.grid);
    CHECK_FALSE(c.sim);
    CHECK_FALSE(c.has_medium);
}

TEST_CASE("full configuration") {
    const char* text =
        "[laws]\nm = 3\nq = 2\ncbar = 1\n"
        "[grid]\ndim = 2\nnx = 64\nny = 32\nlx = 4\nly = 2\n"
        "[medium]\na_profile = rotating\na_theta0 = 0.1\na_theta1 = 0.5\na_kappa = 2\n"
        "c_profile = quadratic-moat\nlambda = 3\nomega0_box = 0.5, 3.5, 0.5, 1.5\n"
        "[sim]\nepsilon = 0.1\ndt = auto\nt_end = 0.5\noutput_every = 100\n"
        "[target]\nkind = disk\ncenter = 2, 1\nradius = 0.5\n"
        "[experiment]\nkind = simulate\n";
    auto c = parse_config_text(text);
    REQUIRE(c.grid);
    CHECK(c.grid->build().size() == 64u * 32u);
    CHECK(c.medium.a_profile == AProfile::Rotating);
    CHECK(c.medium.c_profile == CProfile::QuadraticMoat);
    CHECK(c.medium.omega0.y1 == doctest::Approx(1.5));
    REQUIRE(c.sim);
    CHECK(c.sim->dt <= 0);
    CHECK(c.sim->output_every == 100);
    REQUIRE(c.target);
    CHECK(c.target->kind == "disk");
    CHECK(c.target->cy == doctest::Approx(1.0));
    CHECK(c.experiment == "simulate");
}

TEST_CASE("eps list") {
    auto c = parse_config_text("[sim]\neps = 0.2, 0.1, 0.05\n");
    REQUIRE(c.eps_list.size() == 3);
    CHECK(c.eps_list[2] == doctest::Approx(0.05));
    CHECK_THROWS_AS(parse_config_text("[sim]\neps = 0.1,0.2\n"), ValidationError);
    CHECK_THROWS_AS(parse_number_list("0.1, x", "f"), ValidationError);
}

TEST_CASE("incompatible exponents") {
    CHECK_THROWS_AS(parse_config_text("[laws]\nm = 1.2\nq = 2\ncbar = 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("[laws]\nm = 3\nq = 1.5\ncbar = 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("[laws]\nm = 3\nq = 2\n"), ValidationError);
}

TEST_CASE("parse errors carry the line") {
    try {
        parse_config_text("");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
    }
    try {
        parse_config_text("[laws]\nm = 3\nq = 2\ncbar = 1\nbogus = 4\n");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.line == 5);
    }
    try {
        parse_config_text("[laws]\nm = 3\n[extra]\nx = 1\n");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_config_text("[laws\nm = 3\n"), ParseError);
}
