#include <doctest.h>

#include <cmath>

#include "pks/errors.hpp"
#include "pks/profile.hpp"

using namespace pks;

TEST_CASE("reference profile shape") {
    Potentials pot(LawPair(3, 2, 1));
    auto sol = solve_profile(pot);
    REQUIRE(sol.z.size() > 10);
    CHECK(sol.eval(0.0) == doctest::Approx(0.25).epsilon(1e-12));
    for (size_t i = 1; i < sol.omega.size(); ++i) CHECK_MESSAGE(sol.omega[i] <= sol.omega[i - 1], i);
    CHECK(sol.omega.front() < 0.5);
    CHECK(sol.omega.front() > 0.5 - 1e-5);
    CHECK(sol.omega.back() < 1e-8);
    CHECK(sol.max_residual < 1e-6);
    // tail rates: sqrt of W*'' at the wells, 1 and sqrt(1/3)
    CHECK(sol.tail_rate_zero == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(sol.tail_rate_plus == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(2e-3));
    // omega' = -sqrt(2 W*(omega))
    double z = 0.7;
    CHECK(sol.deriv(z) == doctest::Approx(-std::sqrt(2 * pot.Wstar(sol.eval(z)))).epsilon(1e-6));
}

TEST_CASE("profile energy equals the surface tension integral") {
    Potentials pot(LawPair(3, 2, 1));
    auto sol = solve_profile(pot);
    // equipartition: the layer energy is F(phi_plus) = gamma phi_plus
    CHECK(profile_energy(sol, pot) == doctest::Approx(pot.F(0.5)).epsilon(1e-5));
    ProfileOptions o;
    o.norm_p_A = 2.0;
    auto s2 = solve_profile(pot, o);
    CHECK(profile_energy(s2, pot) == doctest::Approx(2 * pot.tension().gamma * 0.5).epsilon(1e-5));
}

TEST_CASE("anisotropic norm rescales the variable") {
    Potentials pot(LawPair(3, 2, 1));
    auto s1 = solve_profile(pot);
    ProfileOptions o;
    o.norm_p_A = 2.0;
    auto s2 = solve_profile(pot, o);
    for (double z : {-3.0, -1.0, 0.5, 2.0, 4.0}) CHECK(s2.eval(2 * z) == doctest::Approx(s1.eval(z)).epsilon(1e-6));
    CHECK(s2.tail_rate_zero == doctest::Approx(0.5).epsilon(2e-3));
    o.norm_p_A = -1;
    CHECK_THROWS_AS(solve_profile(pot, o), DomainError);
}

TEST_CASE("decay bounds on the reference pair") {
    Potentials pot(LawPair(3, 2, 1));
    auto sol = solve_profile(pot);
    auto rep = verify_decay_bounds(sol, pot);
    CHECK_FALSE(rep.algebraic);
    CHECK(rep.zero_bound_ok);
    CHECK(rep.plus_lower_ok);
    CHECK_FALSE(rep.plus_upper_as_printed);
}

TEST_CASE("q = 3 gives an algebraic tail") {
    Potentials pot(LawPair(4, 3, 1));
    ProfileOptions o;
    o.z_max = 400;
    o.max_step = 0.5;
    auto sol = solve_profile(pot, o);
    auto rep = verify_decay_bounds(sol, pot);
    CHECK(rep.algebraic);
    // omega' = -sqrt(2/3) omega^{3/2} gives omega ~ 6 z^{-2}
    CHECK(sol.tail_slope_zero == doctest::Approx(-2.0).epsilon(0.03));
}

TEST_CASE("q = 4 tail falls off like 1/z") {
    Potentials pot(LawPair(3, 4, 1));
    ProfileOptions o;
    o.z_max = 400;
    o.max_step = 0.5;
    auto sol = solve_profile(pot, o);
    CHECK(verify_decay_bounds(sol, pot).algebraic);
    // omega' = -omega^2 / sqrt(2)
    CHECK(sol.tail_slope_zero == doctest::Approx(-1.0).epsilon(0.03));
}

TEST_CASE("least squares slope") {
    std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
    double r2 = 0;
    CHECK(fit_slope(x, y, &r2) == doctest::Approx(2.0));
    CHECK(r2 == doctest::Approx(1.0));
}
