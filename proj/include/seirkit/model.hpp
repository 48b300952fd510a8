#ifndef SEIRKIT_MODEL_HPP
#define SEIRKIT_MODEL_HPP

#include <functional>
#include <optional>
#include <vector>

#include "seirkit/linalg.hpp"

namespace seirkit {

// Compartment order is fixed as (S, E, I, R) on every interface of this
// library, including scenario files and CSV output.
using StateVector = std::vector<double>;

// Rates of the demographic SEIR system
//   S' = tau - mu*S - beta*S*I
//   E' = beta*S*I - (mu + epsilon)*E
//   I' = epsilon*E - (mu + gamma)*I
//   R' = gamma*I - mu*R
struct ModifiedSeirParams {
    double tau;     // recruitment into S (individuals/time)
    double mu;      // natural death rate (1/time)
    double beta;    // infection rate (1/(individual*time))
    double epsilon; // exposed -> infectious rate (1/time)
    double gamma;   // recovery rate (1/time)

    ModifiedSeirParams(double tau, double mu, double beta, double epsilon, double gamma);
};

// Closed-population SEIR without demography
//   S' = -beta*S*I/N, E' = beta*S*I/N - epsilon*E, I' = epsilon*E - gamma*I, R' = gamma*I
struct ClassicalSeirParams {
    double beta;
    double epsilon;
    double gamma;
    double n; // total population, > 0

    ClassicalSeirParams(double beta, double epsilon, double gamma, double n);
};

// Four-compartment model with two transmission routes and loss of immunity,
//   x1' = -(beta1+beta2)*x1*x3 + epsilon*x2 + alpha*x4
//   x2' = beta1*x1*x3 - (epsilon + phi + sigma)*x2
//   x3' = beta2*x1*x3 - (gamma + delta)*x3 + phi*x2
//   x4' = gamma*x3 - alpha*x4
struct BackwardModelParams {
    double beta1;
    double beta2;
    double epsilon;
    double phi;
    double sigma;
    double gamma;
    double delta;
    double alpha;

    BackwardModelParams(double beta1, double beta2, double epsilon, double phi, double sigma,
                        double gamma, double delta, double alpha);
};

// Bundles what the rest of the toolkit needs to know about an ODE system.
// rhs returns the derivative; analytic_jacobian, when present, must agree
// with central differences (see numeric_jacobian).
struct DynamicalSystem {
    int dimension = 0;
    std::function<StateVector(double t, const StateVector&)> rhs;
    std::function<Matrix(const StateVector&)> analytic_jacobian; // may be empty
    // When true the state models population counts: simulate() clamps tiny
    // integrator undershoot below zero and rejects larger violations.
    bool nonnegative_state = false;
};

StateVector modified_seir_rhs(const ModifiedSeirParams& params, const StateVector& state);
StateVector classical_seir_rhs(const ClassicalSeirParams& params, const StateVector& state);
StateVector backward_model_rhs(const BackwardModelParams& params, const StateVector& state);

double total_population(const StateVector& state);

Matrix modified_seir_jacobian(const ModifiedSeirParams& params, const StateVector& state);

DynamicalSystem make_modified_seir_system(const ModifiedSeirParams& params);
DynamicalSystem make_classical_seir_system(const ClassicalSeirParams& params);
DynamicalSystem make_backward_model_system(const BackwardModelParams& params);

// Central-difference Jacobian, column j = (rhs(x + h e_j) - rhs(x - h e_j)) / (2h).
Matrix numeric_jacobian(const DynamicalSystem& system, const StateVector& point, double step);

// Same, with the default per-coordinate step sqrt(machine eps) * max(1, |x_j|).
Matrix numeric_jacobian(const DynamicalSystem& system, const StateVector& point);

// Clamping rule for integrator output of population systems: entries in
// [-1e-9 * scale, 0) are snapped to zero, anything more negative throws.
// Returns the number of entries clamped.
int clamp_nonnegative(StateVector& state, double scale);

} // namespace seirkit

#endif
