#ifndef SEIRKIT_EQUILIBRIA_HPP
#define SEIRKIT_EQUILIBRIA_HPP

#include <optional>

#include "seirkit/model.hpp"

namespace seirkit {

// Next-generation-matrix bookkeeping for the demographic SEIR model. The
// transmission/transition split keeps the progression rate epsilon on the
// transmission side, so the matrix product is antidiagonal and its spectral
// radius is the square root of the conventional reproduction number. `value`
// carries the sqrt-free convention epsilon*beta*s0 / ((mu+eps)(mu+gamma)),
// which equals spectral_radius^2; both are reported.
struct ReproductionNumber {
    double value;           // sqrt-free convention, threshold at 1
    double s0;              // susceptible level the matrices were built at
    double spectral_radius; // rho(ngm) = sqrt(value)
    Matrix f_matrix;        // 2x2 transmission matrix
    Matrix v_matrix;        // 2x2 diagonal transition matrix
    Matrix ngm;             // f_matrix * v_matrix^{-1}
};

enum class EquilibriumKind { Dfe, Endemic };

struct EquilibriumPoint {
    StateVector state;
    EquilibriumKind kind;
    double residual; // max-norm of the model rhs at state
};

ReproductionNumber next_generation_matrix(const ModifiedSeirParams& params, double s0);

// epsilon*beta*tau / (mu*(mu+epsilon)*(mu+gamma)): the reproduction number
// at the disease-free susceptible level s0 = tau/mu.
double r0(const ModifiedSeirParams& params);

EquilibriumPoint dfe(const ModifiedSeirParams& params);

// Closed-form endemic equilibrium; absent when r0(params) <= 1 (the infected
// level would not be positive).
std::optional<EquilibriumPoint> endemic_equilibrium(const ModifiedSeirParams& params);

} // namespace seirkit

#endif
