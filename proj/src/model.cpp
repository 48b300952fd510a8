#include "seirkit/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "seirkit/errors.hpp"

namespace seirkit {

namespace {

void require_positive_finite(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
        throw std::invalid_argument(std::string(name) + " must be strictly positive and finite");
}

void require_dimension(const StateVector& state, std::size_t n, const char* who) {
    if (state.size() != n)
        throw std::invalid_argument(std::string(who) + ": state has length " +
                                    std::to_string(state.size()) + ", expected " +
                                    std::to_string(n));
}

} // namespace

ModifiedSeirParams::ModifiedSeirParams(double tau_, double mu_, double beta_, double epsilon_,
                                       double gamma_)
    : tau(tau_), mu(mu_), beta(beta_), epsilon(epsilon_), gamma(gamma_) {
    require_positive_finite(tau, "tau");
    require_positive_finite(mu, "mu");
    require_positive_finite(beta, "beta");
    require_positive_finite(epsilon, "epsilon");
    require_positive_finite(gamma, "gamma");
}

ClassicalSeirParams::ClassicalSeirParams(double beta_, double epsilon_, double gamma_, double n_)
    : beta(beta_), epsilon(epsilon_), gamma(gamma_), n(n_) {
    require_positive_finite(beta, "beta");
    require_positive_finite(epsilon, "epsilon");
    require_positive_finite(gamma, "gamma");
    require_positive_finite(n, "n");
}

BackwardModelParams::BackwardModelParams(double beta1_, double beta2_, double epsilon_,
                                         double phi_, double sigma_, double gamma_, double delta_,
                                         double alpha_)
    : beta1(beta1_), beta2(beta2_), epsilon(epsilon_), phi(phi_), sigma(sigma_), gamma(gamma_),
      delta(delta_), alpha(alpha_) {
    require_positive_finite(beta1, "beta1");
    require_positive_finite(beta2, "beta2");
    require_positive_finite(epsilon, "epsilon");
    require_positive_finite(phi, "phi");
    require_positive_finite(sigma, "sigma");
    require_positive_finite(gamma, "gamma");
    require_positive_finite(delta, "delta");
    require_positive_finite(alpha, "alpha");
}

StateVector modified_seir_rhs(const ModifiedSeirParams& p, const StateVector& state) {
    require_dimension(state, 4, "modified_seir_rhs");
    const double s = state[0], e = state[1], i = state[2], r = state[3];
    const double infection = p.beta * s * i;
    return {p.tau - p.mu * s - infection,
            infection - (p.mu + p.epsilon) * e,
            p.epsilon * e - (p.mu + p.gamma) * i,
            p.gamma * i - p.mu * r};
}

StateVector classical_seir_rhs(const ClassicalSeirParams& p, const StateVector& state) {
    require_dimension(state, 4, "classical_seir_rhs");
    const double s = state[0], e = state[1], i = state[2];
    const double infection = p.beta * s * i / p.n;
    const double onset = p.epsilon * e;
    const double recovery = p.gamma * i;
    return {-infection, infection - onset, onset - recovery, recovery};
}

StateVector backward_model_rhs(const BackwardModelParams& p, const StateVector& state) {
    require_dimension(state, 4, "backward_model_rhs");
    const double x1 = state[0], x2 = state[1], x3 = state[2], x4 = state[3];
    return {-(p.beta1 + p.beta2) * x1 * x3 + p.epsilon * x2 + p.alpha * x4,
            p.beta1 * x1 * x3 - p.epsilon * x2 - p.phi * x2 - p.sigma * x2,
            p.beta2 * x1 * x3 - p.gamma * x3 - p.delta * x3 + p.phi * x2,
            p.gamma * x3 - p.alpha * x4};
}

double total_population(const StateVector& state) {
    require_dimension(state, 4, "total_population");
    return state[0] + state[1] + state[2] + state[3];
}

Matrix modified_seir_jacobian(const ModifiedSeirParams& p, const StateVector& state) {
    require_dimension(state, 4, "modified_seir_jacobian");
    const double s = state[0], i = state[2];
    return Matrix(4, 4,
                  {-p.mu - p.beta * i, 0.0, -p.beta * s, 0.0,
                   p.beta * i, -(p.mu + p.epsilon), p.beta * s, 0.0,
                   0.0, p.epsilon, -(p.mu + p.gamma), 0.0,
                   0.0, 0.0, p.gamma, -p.mu});
}

DynamicalSystem make_modified_seir_system(const ModifiedSeirParams& params) {
    DynamicalSystem sys;
    sys.dimension = 4;
    sys.rhs = [params](double, const StateVector& x) { return modified_seir_rhs(params, x); };
    sys.analytic_jacobian = [params](const StateVector& x) {
        return modified_seir_jacobian(params, x);
    };
    sys.nonnegative_state = true;
    return sys;
}

DynamicalSystem make_classical_seir_system(const ClassicalSeirParams& params) {
    DynamicalSystem sys;
    sys.dimension = 4;
    sys.rhs = [params](double, const StateVector& x) { return classical_seir_rhs(params, x); };
    sys.analytic_jacobian = [params](const StateVector& x) {
        const double s = x[0], i = x[2];
        const double k = params.beta / params.n;
        return Matrix(4, 4,
                      {-k * i, 0.0, -k * s, 0.0,
                       k * i, -params.epsilon, k * s, 0.0,
                       0.0, params.epsilon, -params.gamma, 0.0,
                       0.0, 0.0, params.gamma, 0.0});
    };
    sys.nonnegative_state = true;
    return sys;
}

DynamicalSystem make_backward_model_system(const BackwardModelParams& params) {
    DynamicalSystem sys;
    sys.dimension = 4;
    sys.rhs = [params](double, const StateVector& x) { return backward_model_rhs(params, x); };
    sys.analytic_jacobian = [params](const StateVector& x) {
        const double x1 = x[0], x3 = x[2];
        const double bsum = params.beta1 + params.beta2;
        return Matrix(4, 4,
                      {-bsum * x3, params.epsilon, -bsum * x1, params.alpha,
                       params.beta1 * x3, -(params.epsilon + params.phi + params.sigma),
                       params.beta1 * x1, 0.0,
                       params.beta2 * x3, params.phi,
                       params.beta2 * x1 - (params.gamma + params.delta), 0.0,
                       0.0, 0.0, params.gamma, -params.alpha});
    };
    sys.nonnegative_state = true;
    return sys;
}

namespace {

Matrix jacobian_with_steps(const DynamicalSystem& system, const StateVector& point,
                           const StateVector& steps) {
    const std::size_t n = static_cast<std::size_t>(system.dimension);
    if (point.size() != n)
        throw std::invalid_argument("numeric_jacobian: point length does not match dimension");
    Matrix j(n, n);
    StateVector probe = point;
    for (std::size_t col = 0; col < n; ++col) {
        const double h = steps[col];
        probe[col] = point[col] + h;
        StateVector fp = system.rhs(0.0, probe);
        probe[col] = point[col] - h;
        StateVector fm = system.rhs(0.0, probe);
        probe[col] = point[col];
        if (!all_finite(fp) || !all_finite(fm))
            throw NumericalError("numeric_jacobian: non-finite rhs at perturbed point (column " +
                                 std::to_string(col) + ")");
        for (std::size_t row = 0; row < n; ++row) j(row, col) = (fp[row] - fm[row]) / (2.0 * h);
    }
    return j;
}

} // namespace

Matrix numeric_jacobian(const DynamicalSystem& system, const StateVector& point, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("numeric_jacobian: step must be positive");
    return jacobian_with_steps(system, point,
                               StateVector(static_cast<std::size_t>(system.dimension), step));
}

Matrix numeric_jacobian(const DynamicalSystem& system, const StateVector& point) {
    const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    StateVector steps(point.size());
    for (std::size_t j = 0; j < point.size(); ++j)
        steps[j] = root_eps * std::max(1.0, std::abs(point[j]));
    return jacobian_with_steps(system, point, steps);
}

int clamp_nonnegative(StateVector& state, double scale) {
    const double tol = 1e-9 * std::max(1.0, scale);
    int clamped = 0;
    for (double& v : state) {
        if (v < 0.0) {
            if (v < -tol)
                throw NumericalError("state entry " + std::to_string(v) +
                                     " is negative beyond the clamping tolerance " +
                                     std::to_string(-tol));
            v = 0.0;
            ++clamped;
        }
    }
    return clamped;
}

} // namespace seirkit
