#include <doctest.h>

#include <cmath>

#include "../support/draws.hpp"
#include "seirkit/equilibria.hpp"

using namespace seirkit;
using seirkit::testing::Draws;

namespace {
const ModifiedSeirParams kRefRates{0.005, 0.005, 0.25, 0.06, 0.07};
}

TEST_CASE("next_generation_matrix at the unit susceptible level") {
    const ReproductionNumber rn = next_generation_matrix(kRefRates, 1.0);
    // Direct evaluation: 0.06*0.25 / (0.065*0.075).
    const double direct = 0.06 * 0.25 / (0.065 * 0.075);
    CHECK(std::abs(rn.value - direct) <= 1e-12);
    CHECK(rn.value == doctest::Approx(3.0769230769230769).epsilon(1e-13));
    // The antidiagonal product convention: value is the squared spectral radius.
    CHECK(std::abs(rn.spectral_radius * rn.spectral_radius - rn.value) <= 1e-12);
    CHECK(rn.f_matrix(0, 1) == 0.25);
    CHECK(rn.f_matrix(1, 0) == 0.06);
    CHECK(rn.v_matrix(0, 0) == doctest::Approx(0.065));
    CHECK(rn.v_matrix(1, 1) == doctest::Approx(0.075));
    CHECK(rn.v_matrix(0, 1) == 0.0);
    CHECK(rn.v_matrix(1, 0) == 0.0);

    CHECK_THROWS_AS(next_generation_matrix(kRefRates, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(next_generation_matrix(kRefRates, -1.0), std::invalid_argument);
}

TEST_CASE("transmission-free limit drives the value to zero") {
    ModifiedSeirParams p = kRefRates;
    for (double beta : {1e-6, 1e-9, 1e-12}) {
        const ReproductionNumber rn =
            next_generation_matrix({p.tau, p.mu, beta, p.epsilon, p.gamma}, 1.0);
        CHECK(rn.value <= beta / (0.065 * 0.075) * 0.06 + 1e-15);
    }
}

TEST_CASE("r0 closed form and its coupling to the matrix route") {
    CHECK(r0(kRefRates) == doctest::Approx(3.0769230769230769).epsilon(1e-13));

    // Linear in beta.
    const ModifiedSeirParams doubled{0.005, 0.005, 0.5, 0.06, 0.07};
    CHECK(r0(doubled) == doctest::Approx(2.0 * r0(kRefRates)).epsilon(1e-13));

    // Threshold identity: eps*beta*tau = mu*(mu+eps)*(mu+gamma) gives exactly 1.
    const double mu = 0.01, eps = 0.2, gam = 0.1, tau = 0.05;
    const double beta = mu * (mu + eps) * (mu + gam) / (eps * tau);
    CHECK(r0({tau, mu, beta, eps, gam}) == doctest::Approx(1.0).epsilon(1e-14));

    Draws draws(201);
    for (int trial = 0; trial < 500; ++trial) {
        const ModifiedSeirParams p = draws.modified_params();
        const ReproductionNumber rn = next_generation_matrix(p, p.tau / p.mu);
        CHECK(std::abs(rn.value - r0(p)) <= 1e-12 * std::max(1.0, r0(p)));
    }
}

TEST_CASE("dfe closed form with vanishing residual") {
    const EquilibriumPoint at_balance = dfe(kRefRates);
    CHECK(at_balance.state == StateVector{1.0, 0.0, 0.0, 0.0});
    CHECK(at_balance.kind == EquilibriumKind::Dfe);

    const EquilibriumPoint scaled = dfe({0.01, 0.005, 0.25, 0.06, 0.07});
    CHECK(scaled.state[0] == doctest::Approx(2.0).epsilon(1e-15));

    Draws draws(202);
    for (int trial = 0; trial < 1000; ++trial) {
        const EquilibriumPoint eq = dfe(draws.modified_params());
        CHECK(eq.residual <= 1e-14);
    }
}

TEST_CASE("numeric jacobian matches the analytic layout at both equilibria") {
    const DynamicalSystem sys = make_modified_seir_system(kRefRates);
    const auto ee = endemic_equilibrium(kRefRates);
    REQUIRE(ee.has_value());
    for (const StateVector& point : {dfe(kRefRates).state, ee->state}) {
        const Matrix a = modified_seir_jacobian(kRefRates, point);
        const Matrix n = numeric_jacobian(sys, point);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                CHECK(std::abs(n(r, c) - a(r, c)) <= 1e-6);
    }
}

TEST_CASE("endemic equilibrium: existence threshold, positivity, residual") {
    // Present and interior above threshold.
    const auto ee = endemic_equilibrium(kRefRates);
    REQUIRE(ee.has_value());
    for (double v : ee->state) CHECK(v > 0.0);
    CHECK(ee->residual <= 1e-10);
    CHECK(ee->kind == EquilibriumKind::Endemic);

    Draws draws(203);
    SUBCASE("absent at or below threshold") {
        CHECK_FALSE(endemic_equilibrium(draws.modified_params_with_r0(0.5)).has_value());
        CHECK_FALSE(endemic_equilibrium(draws.modified_params_with_r0(1.0)).has_value());
    }
    SUBCASE("the infected level shrinks toward the threshold") {
        Draws local(204);
        const ModifiedSeirParams near = local.modified_params_with_r0(1.001);
        Draws local2(204); // identical base rates, different beta
        const ModifiedSeirParams far = local2.modified_params_with_r0(1.5);
        const auto ee_near = endemic_equilibrium(near);
        const auto ee_far = endemic_equilibrium(far);
        REQUIRE(ee_near.has_value());
        REQUIRE(ee_far.has_value());
        CHECK(ee_near->state[2] < ee_far->state[2]);
        CHECK(ee_near->state[2] > 0.0);
    }
    SUBCASE("random draws straddling the threshold") {
        for (int trial = 0; trial < 1000; ++trial) {
            const double target = draws.rate(0.05, 20.0);
            const ModifiedSeirParams p = draws.modified_params_with_r0(target);
            const auto maybe = endemic_equilibrium(p);
            CHECK(maybe.has_value() == (r0(p) > 1.0));
            if (maybe) {
                for (double v : maybe->state) CHECK(v > 0.0);
                CHECK(maybe->residual <= 1e-10);
            }
        }
    }
}
