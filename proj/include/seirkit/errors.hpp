#ifndef SEIRKIT_ERRORS_HPP
#define SEIRKIT_ERRORS_HPP

#include <limits>
#include <stdexcept>
#include <string>

namespace seirkit {

// Thrown when an iterative or finite-precision computation cannot deliver a
// usable result (non-finite intermediates, non-convergence, degenerate
// measurements). Validation problems use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what,
                            double best_residual = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(what), best_residual_(best_residual) {}

    // Best residual reached before giving up; NaN when not applicable.
    double best_residual() const { return best_residual_; }

private:
    double best_residual_;
};

} // namespace seirkit

#endif
