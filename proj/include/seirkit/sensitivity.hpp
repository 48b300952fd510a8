#ifndef SEIRKIT_SENSITIVITY_HPP
#define SEIRKIT_SENSITIVITY_HPP

#include <string>
#include <vector>

#include "seirkit/model.hpp"

namespace seirkit {

// Which reproduction-number convention the indices differentiate:
// SusceptibleUnit uses eps*beta/((mu+eps)(mu+gamma)) (s0 = 1); Demographic
// multiplies in tau/mu and so adds tau to the parameter list.
enum class R0Convention { SusceptibleUnit, Demographic };

enum class SensitivityMethod { Analytic, FiniteDifference };

struct SensitivityIndex {
    std::string parameter; // beta | epsilon | mu | gamma | tau
    double value;
    SensitivityMethod method;
};

// Parameter names recognized for a convention, in reporting order.
std::vector<std::string> sensitivity_parameters(R0Convention convention);

// Normalized index (dR0/dp)*(p/R0) from the closed forms.
SensitivityIndex sensitivity_analytic(const ModifiedSeirParams& params, const std::string& which,
                                      R0Convention convention = R0Convention::SusceptibleUnit);

// Same index by central differences with relative step rel_step in (0, 0.1].
SensitivityIndex sensitivity_fd(const ModifiedSeirParams& params, const std::string& which,
                                double rel_step,
                                R0Convention convention = R0Convention::SusceptibleUnit);

// Analytic and finite-difference index for every parameter of the chosen
// convention: the data behind a sensitivity bar chart.
std::vector<SensitivityIndex> sensitivity_report(
    const ModifiedSeirParams& params, R0Convention convention = R0Convention::SusceptibleUnit,
    double rel_step = 1e-6);

} // namespace seirkit

#endif
