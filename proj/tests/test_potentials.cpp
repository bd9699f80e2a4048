#include <doctest.h>

#include <cmath>
#include <random>

#include "pks/errors.hpp"
#include "pks/potentials.hpp"

using namespace pks;

namespace {

// W*(v) for m = 3, q = 2, c_bar = 1 written out by hand: v^2/2 - (v - 1/8)_+^{3/2} * 2/(3 sqrt(1.5))
double wstar_ref(double v) {
    double w = v - 0.125;
    double fs = w > 0 ? (2.0 / 3.0) * w * std::sqrt(w / 1.5) : 0.0;
    return 0.5 * v * v - fs;
}

} // namespace

TEST_CASE("wells vanish at the minimisers") {
    Potentials pot(LawPair(3, 2, 1));
    CHECK(pot.W(0.0) == doctest::Approx(0).scale(1));
    CHECK(std::abs(pot.W(0.5)) < 1e-15);
    CHECK(std::abs(pot.Wstar(0.0)) < 1e-15);
    CHECK(std::abs(pot.Wstar(0.5)) < 1e-15);
    for (int i = 1; i < 100; ++i) {
        double x = 1.5 * i / 100.0;
        CHECK(pot.W(x) >= 0.0);
        CHECK(pot.Wstar(x) >= 0.0);
    }
    CHECK(pot.Wstar(0.3) == doctest::Approx(wstar_ref(0.3)).epsilon(1e-13));
    CHECK(pot.Wstar(0.1) == doctest::Approx(0.005).epsilon(1e-13));
    CHECK_THROWS_AS(pot.W(-1e-3), DomainError);
}

TEST_CASE("energy identity holds on random samples") {
    for (auto [m, q, c] : {std::tuple{3.0, 2.0, 1.0}, {4.0, 3.0, 0.7}, {2.5, 2.0, 2.0}}) {
        Potentials pot(LawPair(m, q, c));
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> U(0, 2);
        std::vector<double> u(2000), v(2000);
        for (size_t i = 0; i < u.size(); ++i) {
            u[i] = U(rng);
            v[i] = U(rng) - 0.5;
        }
        CHECK(pot.identity_residual(u, v) <= 1e-12);
        auto p = pot.penalties(0.4, 0.2);
        CHECK(p.P >= 0.0);
        CHECK(p.R >= 0.0);
    }
}

TEST_CASE("cached F agrees with direct quadrature") {
    Potentials pot(LawPair(3, 2, 1));
    for (int i = 0; i <= 40; ++i) {
        double v = 0.5 * i / 40.0;
        CHECK(pot.F(v) == doctest::Approx(pot.F_exact(v)).epsilon(1e-8).scale(1e-10));
    }
    CHECK(pot.F(-0.2) == 0.0);
    CHECK(pot.F(0.9) == doctest::Approx(pot.F(0.5)));
    double h = 1e-6;
    CHECK(pot.dF(0.3) == doctest::Approx((pot.F(0.3 + h) - pot.F(0.3 - h)) / (2 * h)).epsilon(1e-5));
    CHECK(pot.dF(0.3) == doctest::Approx(std::sqrt(2 * wstar_ref(0.3))).epsilon(1e-10));
}

TEST_CASE("surface tension of the reference pair") {
    Potentials pot(LawPair(3, 2, 1));
    // frozen from a 2^20-panel trapezoid + Richardson oracle split at v = a
    CHECK(pot.tension().gamma == doctest::Approx(0.0808997421589599).epsilon(1e-10));
    CHECK(pot.tension().gamma0 == doctest::Approx(pot.tension().gamma).epsilon(1e-14));
    CHECK(pot.F(0.5) == doctest::Approx(0.04044987107948).epsilon(1e-10));
}

TEST_CASE("layered integration of a smooth function") {
    double err = 0;
    double v = integrate_layered([](double x) { return std::exp(-x); }, 0, 3, 1e-12, 1e-14, &err);
    CHECK(v == doctest::Approx(1 - std::exp(-3.0)).epsilon(1e-12));
    CHECK(err < 1e-9);
}

TEST_CASE("reference values by hand") {
    Potentials pot(LawPair(3, 2, 1));
    CHECK(pot.W(1.0 / 6.0) == doctest::Approx(1.0 / 108.0).epsilon(1e-12));
    CHECK(pot.W(2.0) == doctest::Approx(2.25).epsilon(1e-12));
    // below a only the quadratic part is active
    CHECK(pot.Wstar(0.1) == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(pot.F(0.1) == doctest::Approx(0.005).epsilon(1e-8));
    // 0.25^2/2 - (2/3) 0.125 sqrt(0.125/1.5)
    CHECK(pot.Wstar(0.25) == doctest::Approx(0.03125 - (2.0 / 3.0) * 0.125 * std::sqrt(0.125 / 1.5)).epsilon(1e-12));
    CHECK(pot.Wstar(0.25) == doctest::Approx(7.1937e-3).epsilon(1e-4));
    CHECK(pot.WstarC(2.0, 0.5) == doctest::Approx(0.125).epsilon(1e-12));
}
