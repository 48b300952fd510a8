#include <doctest.h>

#include <cmath>

#include "../support/draws.hpp"
#include "seirkit/sensitivity.hpp"

using namespace seirkit;
using seirkit::testing::Draws;

namespace {
const ModifiedSeirParams kRefRates{0.005, 0.005, 0.25, 0.06, 0.07};

double unit_r0(const ModifiedSeirParams& p) {
    return p.epsilon * p.beta / ((p.mu + p.epsilon) * (p.mu + p.gamma));
}
} // namespace

TEST_CASE("analytic indices at the reference rates") {
    CHECK(sensitivity_analytic(kRefRates, "beta").value == 1.0);
    CHECK(sensitivity_analytic(kRefRates, "epsilon").value ==
          doctest::Approx(0.076923076923076927).epsilon(1e-13));
    CHECK(sensitivity_analytic(kRefRates, "mu").value ==
          doctest::Approx(-0.14358974358974358).epsilon(1e-13));
    CHECK(sensitivity_analytic(kRefRates, "gamma").value ==
          doctest::Approx(-0.93333333333333333).epsilon(1e-13));
    CHECK_THROWS_AS(sensitivity_analytic(kRefRates, "nu"), std::invalid_argument);
    CHECK_THROWS_AS(sensitivity_analytic(kRefRates, "tau"), std::invalid_argument); // not in s0=1 form
}

TEST_CASE("finite differences: beta is exact, mu matches the closed form") {
    CHECK(std::abs(sensitivity_fd(kRefRates, "beta", 1e-6).value - 1.0) <= 1e-9);
    CHECK(sensitivity_fd(kRefRates, "mu", 1e-6).value ==
          doctest::Approx(-0.005 * 0.14 / (0.075 * 0.065)).epsilon(1e-8));
    CHECK_THROWS_AS(sensitivity_fd(kRefRates, "beta", 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sensitivity_fd(kRefRates, "beta", 0.2), std::invalid_argument);
}

TEST_CASE("step sweep converges toward the analytic value") {
    const double exact = sensitivity_analytic(kRefRates, "gamma").value;
    double previous_gap = 1.0;
    for (double h : {1e-2, 1e-3, 1e-4}) {
        const double gap = std::abs(sensitivity_fd(kRefRates, "gamma", h).value - exact);
        CHECK(gap < previous_gap);
        previous_gap = gap;
    }
}

TEST_CASE("analytic and finite-difference agree on random draws") {
    Draws draws(401);
    for (int trial = 0; trial < 1000; ++trial) {
        const ModifiedSeirParams p = draws.modified_params(0.02, 2.0);
        for (const std::string& name : sensitivity_parameters(R0Convention::SusceptibleUnit)) {
            const double a = sensitivity_analytic(p, name).value;
            const double f = sensitivity_fd(p, name, 1e-6).value;
            CHECK(std::abs(a - f) <= 1e-8 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("sign contract and degree-zero homogeneity") {
    Draws draws(402);
    for (int trial = 0; trial < 500; ++trial) {
        const ModifiedSeirParams p = draws.modified_params(0.02, 2.0);
        const double s_beta = sensitivity_analytic(p, "beta").value;
        const double s_eps = sensitivity_analytic(p, "epsilon").value;
        const double s_mu = sensitivity_analytic(p, "mu").value;
        const double s_gam = sensitivity_analytic(p, "gamma").value;
        CHECK(s_beta > 0.0);
        CHECK(s_eps > 0.0);
        CHECK(s_mu < 0.0);
        CHECK(s_gam < 0.0);
        CHECK(std::abs(s_beta + s_eps + s_mu + s_gam) <= 1e-8);

        // Scaling every rate by k leaves the ratio fixed: degree 0.
        const ModifiedSeirParams scaled{p.tau * 2, p.mu * 2, p.beta * 2, p.epsilon * 2,
                                        p.gamma * 2};
        CHECK(unit_r0(scaled) / unit_r0(p) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("report covers both methods, ordered by parameter") {
    const auto report = sensitivity_report(kRefRates);
    REQUIRE(report.size() == 8);
    for (std::size_t i = 0; i < report.size(); i += 2) {
        CHECK(report[i].method == SensitivityMethod::Analytic);
        CHECK(report[i + 1].method == SensitivityMethod::FiniteDifference);
        CHECK(report[i].parameter == report[i + 1].parameter);
        CHECK(std::abs(report[i].value - report[i + 1].value) <=
              1e-8 * std::max(1.0, std::abs(report[i].value)));
    }
    // Magnitude ordering at the reference rates: beta, gamma, mu, epsilon.
    CHECK(std::abs(report[0].value) >= std::abs(report[6].value)); // beta >= gamma
    CHECK(std::abs(report[6].value) >= std::abs(report[4].value)); // gamma >= mu
    CHECK(std::abs(report[4].value) >= std::abs(report[2].value)); // mu >= epsilon
}

TEST_CASE("demographic convention adds tau and keeps the sum at zero") {
    const auto params = sensitivity_parameters(R0Convention::Demographic);
    REQUIRE(params.size() == 5);
    CHECK(sensitivity_analytic(kRefRates, "tau", R0Convention::Demographic).value == 1.0);

    Draws draws(403);
    for (int trial = 0; trial < 200; ++trial) {
        const ModifiedSeirParams p = draws.modified_params(0.02, 2.0);
        double sum = 0.0;
        for (const std::string& name : params) {
            const double a = sensitivity_analytic(p, name, R0Convention::Demographic).value;
            const double f = sensitivity_fd(p, name, 1e-6, R0Convention::Demographic).value;
            CHECK(std::abs(a - f) <= 1e-8 * std::max(1.0, std::abs(a)));
            sum += a;
        }
        CHECK(std::abs(sum) <= 1e-8);
    }
}
