#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "../support/draws.hpp"
#include "seirkit/equilibria.hpp"
#include "seirkit/errors.hpp"
#include "seirkit/stability.hpp"

using namespace seirkit;
using seirkit::testing::Draws;

namespace {

const ModifiedSeirParams kRefRates{0.005, 0.005, 0.25, 0.06, 0.07};

// Well-conditioned similarity transform for planting eigenvalues.
const Matrix kBasis(4, 4, {2, 1, 0, 0, 1, 2, 1, 0, 0, 1, 2, 1, 0, 0, 1, 2});

Matrix similarity_from_diagonal(const Matrix& d) {
    // A = P D P^{-1}, computed column-by-column from P^T A^T = (P D)^T.
    const Matrix pd = kBasis * d;
    const Matrix pt = kBasis.transposed();
    Matrix a(4, 4);
    for (std::size_t col = 0; col < 4; ++col) {
        Vec rhs(4);
        for (std::size_t k = 0; k < 4; ++k) rhs[k] = pd(col, k); // row col of PD
        const Vec row = solve_linear(pt, rhs);
        for (std::size_t k = 0; k < 4; ++k) a(col, k) = row[k];
    }
    return a;
}

// Expand prod (lambda - root_i) for real roots.
std::vector<double> expand_roots(const std::vector<double>& roots) {
    std::vector<double> c{1.0};
    for (double r : roots) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= c[i] * r;
        }
        c = next;
    }
    return c;
}

} // namespace

TEST_CASE("characteristic_polynomial: identity and planted spectra") {
    CHECK(characteristic_polynomial(Matrix::identity(2)).coefficients ==
          std::vector<double>{1.0, -2.0, 1.0});

    CHECK_THROWS_AS(characteristic_polynomial(Matrix(5, 5)), std::invalid_argument);

    Draws draws(301);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> eigs(4);
        for (double& e : eigs) {
            e = draws.uniform(0.5, 3.0) * (draws.unit() < 0.5 ? -1.0 : 1.0);
        }
        Matrix d(4, 4);
        for (std::size_t i = 0; i < 4; ++i) d(i, i) = eigs[i];
        const CharPoly p = characteristic_polynomial(similarity_from_diagonal(d));
        const std::vector<double> expected = expand_roots(eigs);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(std::abs(p.coefficients[i] - expected[i]) <= 1e-9 * std::max(1.0, std::abs(expected[i])));
    }
}

TEST_CASE("dfe quartic factors as the double root at -mu times the printed quadratic") {
    const Matrix j = modified_seir_jacobian(kRefRates, dfe(kRefRates).state);
    const CharPoly quartic = characteristic_polynomial(j);

    const double mu = kRefRates.mu;
    const double a1 = 2.0 * mu + kRefRates.epsilon + kRefRates.gamma;
    const double a2 = (mu + kRefRates.epsilon) * (mu + kRefRates.gamma) -
                      kRefRates.beta * kRefRates.tau * kRefRates.epsilon / mu;

    // (lambda + mu)^2 (lambda^2 + a1 lambda + a2), expanded by hand.
    const std::vector<double> expected{
        1.0,
        a1 + 2.0 * mu,
        a2 + 2.0 * mu * a1 + mu * mu,
        2.0 * mu * a2 + mu * mu * a1,
        mu * mu * a2};
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(quartic.coefficients[i] ==
              doctest::Approx(expected[i]).epsilon(1e-12).scale(1e-12));
}

TEST_CASE("polynomial_roots: closed forms and planted roots") {
    CHECK_THROWS_AS(polynomial_roots(CharPoly({1.0})), std::invalid_argument);

    const ComplexVec pm1 = polynomial_roots(CharPoly({1.0, 0.0, -1.0}));
    CHECK(pm1[0] == std::complex<double>(-1.0, 0.0));
    CHECK(pm1[1] == std::complex<double>(1.0, 0.0));

    const ComplexVec imag = polynomial_roots(CharPoly({1.0, 0.0, 1.0}));
    CHECK(imag[0] == std::conj(imag[1]));
    CHECK(imag[0].imag() != 0.0);
    CHECK(std::abs(imag[0] - std::complex<double>(0.0, -1.0)) <= 1e-12);

    const ComplexVec cubic = polynomial_roots(CharPoly({1.0, 0.0, -1.0, 0.0})); // l^3 - l
    REQUIRE(cubic.size() == 3);
    CHECK(std::abs(cubic[0] - std::complex<double>(-1.0, 0.0)) <= 1e-9);
    CHECK(std::abs(cubic[1]) <= 1e-9);
    CHECK(std::abs(cubic[2] - std::complex<double>(1.0, 0.0)) <= 1e-9);

    Draws draws(302);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> eigs(4);
        bool separated = false;
        while (!separated) {
            for (double& e : eigs)
                e = draws.uniform(0.5, 3.0) * (draws.unit() < 0.5 ? -1.0 : 1.0);
            separated = true;
            for (int i = 0; i < 4 && separated; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (std::abs(eigs[i] - eigs[j]) < 0.3) separated = false;
        }
        const ComplexVec roots = polynomial_roots(CharPoly(expand_roots(eigs)));
        std::sort(eigs.begin(), eigs.end());
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(roots[i].real() - eigs[i]) <= 1e-8);
            CHECK(roots[i].imag() == 0.0);
        }
    }
}

TEST_CASE("roots of the dfe quadratic factor flip sign with the threshold") {
    // Above threshold the constant term is negative: one positive real root.
    const double a1 = 2.0 * kRefRates.mu + kRefRates.epsilon + kRefRates.gamma;
    const double a2 = (kRefRates.mu + kRefRates.epsilon) * (kRefRates.mu + kRefRates.gamma) *
                      (1.0 - r0(kRefRates));
    REQUIRE(a2 < 0.0);
    const ComplexVec roots = polynomial_roots(CharPoly({1.0, a1, a2}));
    CHECK(roots[0].imag() == 0.0);
    CHECK(roots[1].imag() == 0.0);
    // Quadratic-formula oracle.
    const double disc = std::sqrt(a1 * a1 - 4.0 * a2);
    CHECK(roots[1].real() == doctest::Approx((-a1 + disc) / 2.0).epsilon(1e-12));
    CHECK(roots[1].real() > 0.0);
    CHECK(roots[0].real() < 0.0);
}

TEST_CASE("eigenvalues of planted matrices are recovered through both stages") {
    Draws draws(303);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> eigs{-draws.uniform(1.0, 3.0), -draws.uniform(0.3, 0.9),
                                 draws.uniform(0.05, 0.25), draws.uniform(0.4, 2.0)};
        Matrix d(4, 4);
        for (std::size_t i = 0; i < 4; ++i) d(i, i) = eigs[i];
        const ComplexVec roots =
            polynomial_roots(characteristic_polynomial(similarity_from_diagonal(d)));
        std::sort(eigs.begin(), eigs.end());
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(roots[i] - std::complex<double>(eigs[i], 0.0)) <= 1e-8);
    }
}

TEST_CASE("classify_stability") {
    using C = std::complex<double>;
    CHECK(classify_stability({C(-1, 0), C(-2, 0)}, 1e-9) == Verdict::Stable);
    CHECK(classify_stability({C(-1, 0), C(0.5, 0)}, 1e-9) == Verdict::Unstable);
    CHECK(classify_stability({C(-1, 0), C(1e-12, 0)}, 1e-9) == Verdict::NonHyperbolic);
    CHECK_THROWS_AS(classify_stability({}, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(classify_stability({C(1, 0)}, 0.0), std::invalid_argument);
}

TEST_CASE("descartes_positive_root_bound") {
    CHECK(descartes_positive_root_bound({1.0, 0.2, 0.01}) == 0);
    CHECK(descartes_positive_root_bound({1.0, 0.2, -0.01}) == 1);
    CHECK(descartes_positive_root_bound({1.0, 0.0, -1.0, 0.0}) == 1); // l^3 - l
    CHECK_THROWS_AS(descartes_positive_root_bound({0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(descartes_positive_root_bound({0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("routh_hurwitz_cubic") {
    CHECK(routh_hurwitz_cubic(3.0, 3.0, 1.0));        // (l+1)^3
    CHECK_FALSE(routh_hurwitz_cubic(-1.0, 1.0, 1.0)); // sign change up front
    CHECK_FALSE(routh_hurwitz_cubic(1.0, 1.0, 2.0));  // A*B - C < 0
}

TEST_CASE("dfe report: verdicts, the -mu pair, and the descartes criterion") {
    Draws draws(304);

    const StabilityReport stable = dfe_stability_report(draws.modified_params_with_r0(0.5));
    CHECK(stable.verdict == Verdict::Stable);
    CHECK(stable.criteria.at("descartes"));

    const StabilityReport unstable = dfe_stability_report(kRefRates); // r0 ~ 3.08
    CHECK(unstable.verdict == Verdict::Unstable);
    CHECK_FALSE(unstable.criteria.at("descartes"));
    int positive = 0;
    for (const auto& z : unstable.eigenvalues)
        if (z.real() > unstable.tol) ++positive;
    CHECK(positive == 1);

    for (int trial = 0; trial < 200; ++trial) {
        const ModifiedSeirParams p = draws.modified_params();
        const StabilityReport rep = dfe_stability_report(p);
        CHECK(rep.deflation_residual <= 1e-9);
        int at_minus_mu = 0;
        for (const auto& z : rep.eigenvalues)
            if (std::abs(z - std::complex<double>(-p.mu, 0.0)) <= 1e-9) ++at_minus_mu;
        CHECK(at_minus_mu >= 2);
        CHECK(rep.criteria.at("double_root_at_minus_mu"));
    }
}

TEST_CASE("dfe criterion and eigenvalue verdict agree over random draws") {
    Draws draws(305);
    for (int trial = 0; trial < 1000; ++trial) {
        const double target = draws.rate(0.05, 20.0);
        const ModifiedSeirParams p = draws.modified_params_with_r0(target);
        const StabilityReport rep = dfe_stability_report(p);
        const double a1 = rep.factor.coefficients[1];
        const double a2 = rep.factor.coefficients[2];
        // Threshold coupling: sign(a2) = sign(1 - r0).
        CHECK(std::signbit(a2) == std::signbit(1.0 - r0(p)));
        if (rep.verdict != Verdict::NonHyperbolic)
            CHECK((rep.verdict == Verdict::Stable) == (a1 > 0.0 && a2 > 0.0));
    }
}

TEST_CASE("ee report: criterion agreement, printed A coefficient, -mu root") {
    const StabilityReport rep = ee_stability_report(kRefRates);
    CHECK(rep.verdict == Verdict::Stable);
    CHECK(rep.criteria.at("routh_hurwitz"));

    const auto ee = endemic_equilibrium(kRefRates);
    REQUIRE(ee.has_value());
    const double a_closed =
        3.0 * kRefRates.mu + kRefRates.epsilon + kRefRates.gamma + kRefRates.beta * ee->state[2];
    CHECK(std::abs(rep.factor.coefficients[1] - a_closed) <= 1e-10);

    int at_minus_mu = 0;
    for (const auto& z : rep.eigenvalues)
        if (std::abs(z - std::complex<double>(-kRefRates.mu, 0.0)) <= 1e-9) ++at_minus_mu;
    CHECK(at_minus_mu >= 1);

    Draws draws(306);
    CHECK_THROWS_AS(ee_stability_report(draws.modified_params_with_r0(0.8)),
                    std::invalid_argument);
}

TEST_CASE("ee criterion matches eigenvalue classification on draws above threshold") {
    Draws draws(307);
    for (int trial = 0; trial < 1000; ++trial) {
        const double target = draws.rate(1.001, 20.0);
        const ModifiedSeirParams p = draws.modified_params_with_r0(target);
        const StabilityReport rep = ee_stability_report(p);
        if (rep.verdict == Verdict::NonHyperbolic) continue; // borderline draw
        CHECK((rep.verdict == Verdict::Stable) == rep.criteria.at("routh_hurwitz"));
    }
}

TEST_CASE("shifted system agrees with the unshifted rhs") {
    Draws draws(308);
    for (int trial = 0; trial < 200; ++trial) {
        const ModifiedSeirParams p = draws.modified_params();
        const StateVector xyzw = draws.state4(0.0, 1.5);
        const StateVector shifted = shifted_dfe_rhs(p, xyzw);
        const StateVector original =
            modified_seir_rhs(p, {xyzw[0] + p.tau / p.mu, xyzw[1], xyzw[2], xyzw[3]});
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(shifted[i] - original[i]) <=
                  1e-9 * std::max(1.0, std::abs(original[i])));
    }
}

TEST_CASE("lyapunov certificate: origin, identity, drift sign") {
    // At the origin both V and its drift vanish.
    const StateVector at_origin = shifted_dfe_rhs(kRefRates, {0, 0, 0, 0});
    CHECK(at_origin == StateVector{0, 0, 0, 0});

    const LyapunovCertificate cert = lyapunov_dfe_certificate(kRefRates, 10000, 1.0);
    CHECK(cert.verdict);
    CHECK(cert.identity_residual <= 1e-10);
    CHECK(cert.max_dvdt <= 0.0);
    CHECK(cert.max_v_violation < 0.0); // V was strictly positive off the origin
    CHECK(cert.sample_count == 10000);

    // The drift is exactly -mu times the population displacement.
    Draws draws(309);
    for (int trial = 0; trial < 200; ++trial) {
        const StateVector xyzw = draws.state4(0.0, 2.0);
        const StateVector f = shifted_dfe_rhs(kRefRates, xyzw);
        const double v = xyzw[0] + xyzw[1] + xyzw[2] + xyzw[3];
        const double dvdt = f[0] + f[1] + f[2] + f[3];
        CHECK(std::abs(dvdt + kRefRates.mu * v) <= 1e-10);
    }

    CHECK_THROWS_AS(lyapunov_dfe_certificate(kRefRates, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lyapunov_dfe_certificate(kRefRates, 10, 0.0), std::invalid_argument);
}

TEST_CASE("lyapunov sampling is reproducible for a fixed seed") {
    const LyapunovCertificate a = lyapunov_dfe_certificate(kRefRates, 500, 1.0, 42);
    const LyapunovCertificate b = lyapunov_dfe_certificate(kRefRates, 500, 1.0, 42);
    CHECK(a.max_dvdt == b.max_dvdt);
    CHECK(a.identity_residual == b.identity_residual);
    const LyapunovCertificate c = lyapunov_dfe_certificate(kRefRates, 500, 1.0, 43);
    CHECK(a.max_dvdt != c.max_dvdt);
}
