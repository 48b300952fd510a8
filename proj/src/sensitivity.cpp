#include "seirkit/sensitivity.hpp"

#include <cmath>
#include <stdexcept>

#include "seirkit/equilibria.hpp"

namespace seirkit {

namespace {

double r0_of(const ModifiedSeirParams& p, R0Convention convention) {
    const double unit = p.epsilon * p.beta / ((p.mu + p.epsilon) * (p.mu + p.gamma));
    return convention == R0Convention::SusceptibleUnit ? unit : unit * p.tau / p.mu;
}

ModifiedSeirParams with_scaled(const ModifiedSeirParams& p, const std::string& which,
                               double factor) {
    ModifiedSeirParams q = p;
    if (which == "beta") q.beta *= factor;
    else if (which == "epsilon") q.epsilon *= factor;
    else if (which == "mu") q.mu *= factor;
    else if (which == "gamma") q.gamma *= factor;
    else if (which == "tau") q.tau *= factor;
    else throw std::invalid_argument("sensitivity: unknown parameter '" + which + "'");
    return ModifiedSeirParams(q.tau, q.mu, q.beta, q.epsilon, q.gamma); // revalidate
}

void require_known(const std::string& which, R0Convention convention) {
    for (const std::string& name : sensitivity_parameters(convention))
        if (name == which) return;
    throw std::invalid_argument("sensitivity: parameter '" + which +
                                "' is not part of this reproduction-number convention");
}

} // namespace

std::vector<std::string> sensitivity_parameters(R0Convention convention) {
    if (convention == R0Convention::Demographic)
        return {"beta", "epsilon", "mu", "gamma", "tau"};
    return {"beta", "epsilon", "mu", "gamma"};
}

SensitivityIndex sensitivity_analytic(const ModifiedSeirParams& p, const std::string& which,
                                      R0Convention convention) {
    require_known(which, convention);
    const bool demographic = convention == R0Convention::Demographic;
    double value = 0.0;
    if (which == "beta") {
        value = 1.0;
    } else if (which == "tau") {
        value = 1.0;
    } else if (which == "epsilon") {
        value = p.mu / (p.mu + p.epsilon);
    } else if (which == "gamma") {
        value = -p.gamma / (p.mu + p.gamma);
    } else { // mu
        value = demographic
                    ? -(1.0 + p.mu / (p.mu + p.epsilon) + p.mu / (p.mu + p.gamma))
                    : -p.mu * (2.0 * p.mu + p.epsilon + p.gamma) /
                          ((p.mu + p.gamma) * (p.mu + p.epsilon));
    }
    return {which, value, SensitivityMethod::Analytic};
}

SensitivityIndex sensitivity_fd(const ModifiedSeirParams& p, const std::string& which,
                                double rel_step, R0Convention convention) {
    require_known(which, convention);
    if (!(rel_step > 0.0) || rel_step > 0.1)
        throw std::invalid_argument("sensitivity_fd: rel_step must lie in (0, 0.1]");
    const double base = r0_of(p, convention);
    if (base == 0.0) throw std::invalid_argument("sensitivity_fd: reproduction number is zero");
    const double up = r0_of(with_scaled(p, which, 1.0 + rel_step), convention);
    const double down = r0_of(with_scaled(p, which, 1.0 - rel_step), convention);
    const double value = (up - down) / (2.0 * rel_step * base);
    return {which, value, SensitivityMethod::FiniteDifference};
}

std::vector<SensitivityIndex> sensitivity_report(const ModifiedSeirParams& p,
                                                 R0Convention convention, double rel_step) {
    std::vector<SensitivityIndex> out;
    for (const std::string& name : sensitivity_parameters(convention)) {
        out.push_back(sensitivity_analytic(p, name, convention));
        out.push_back(sensitivity_fd(p, name, rel_step, convention));
    }
    return out;
}

} // namespace seirkit
