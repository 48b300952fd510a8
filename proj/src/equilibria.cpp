#include "seirkit/equilibria.hpp"

#include <cmath>
#include <stdexcept>

namespace seirkit {

namespace {

double rhs_residual(const ModifiedSeirParams& params, const StateVector& state) {
    return max_abs(modified_seir_rhs(params, state));
}

} // namespace

ReproductionNumber next_generation_matrix(const ModifiedSeirParams& p, double s0) {
    if (!(s0 > 0.0) || !std::isfinite(s0))
        throw std::invalid_argument("next_generation_matrix: s0 must be positive and finite");

    ReproductionNumber r;
    r.s0 = s0;
    r.f_matrix = Matrix(2, 2, {0.0, p.beta * s0, p.epsilon, 0.0});
    r.v_matrix = Matrix(2, 2, {p.mu + p.epsilon, 0.0, 0.0, p.mu + p.gamma});

    Matrix v_inv(2, 2);
    v_inv(0, 0) = 1.0 / r.v_matrix(0, 0);
    v_inv(1, 1) = 1.0 / r.v_matrix(1, 1);
    r.ngm = r.f_matrix * v_inv;

    // ngm is antidiagonal, so its eigenvalues are +-sqrt of the product of
    // the off-diagonal entries; the sqrt-free value is that product.
    const double product = r.ngm(0, 1) * r.ngm(1, 0);
    r.spectral_radius = std::sqrt(product);
    r.value = product;
    return r;
}

double r0(const ModifiedSeirParams& p) {
    return p.epsilon * p.beta * p.tau / (p.mu * (p.mu + p.epsilon) * (p.mu + p.gamma));
}

EquilibriumPoint dfe(const ModifiedSeirParams& p) {
    StateVector state{p.tau / p.mu, 0.0, 0.0, 0.0};
    return {state, EquilibriumKind::Dfe, rhs_residual(p, state)};
}

std::optional<EquilibriumPoint> endemic_equilibrium(const ModifiedSeirParams& p) {
    if (!(r0(p) > 1.0)) return std::nullopt;
    const double me = p.mu + p.epsilon;
    const double mg = p.mu + p.gamma;
    const double s_star = mg * me / (p.beta * p.epsilon);
    const double i_star = (p.tau * p.beta * p.epsilon - p.mu * mg * me) / (p.beta * mg * me);
    const double e_star = mg * i_star / p.epsilon;
    const double r_star = p.gamma * i_star / p.mu;
    StateVector state{s_star, e_star, i_star, r_star};
    return EquilibriumPoint{state, EquilibriumKind::Endemic, rhs_residual(p, state)};
}

} // namespace seirkit
