#ifndef SEIRKIT_INTEGRATE_HPP
#define SEIRKIT_INTEGRATE_HPP

#include <vector>

#include "seirkit/model.hpp"

namespace seirkit {

struct StepConfig {
    double dt;      // > 0
    double t_start;
    double t_end;   // > t_start, at least one step away

    StepConfig(double dt, double t_start, double t_end);
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    int clamp_count = 0; // entries snapped to zero by the nonnegativity rule
};

// One classical four-stage RK4 update from (t, state) over dt.
StateVector rk4_step(const DynamicalSystem& system, double t, const StateVector& state, double dt);

// Fixed-step RK4 from t_start to t_end. Every step is recorded; the final
// step is shortened so t_end is hit exactly. Population systems get the
// clamping rule applied after each step.
Trajectory simulate(const DynamicalSystem& system, const StateVector& initial,
                    const StepConfig& config);

// Empirical convergence order: integrates to t_end at dt0, dt0/2 and dt0/4,
// measures final-state errors against the dt0/8 run, and averages the two
// log2 error ratios. Smooth systems give values near 4.
double convergence_order(const DynamicalSystem& system, const StateVector& initial, double t_end,
                         double dt0);

struct PeakEstimate {
    double time;
    double value;
};

// Location and height of an interior maximum of one state component,
// refined by a parabola through the three samples around the discrete
// argmax. Throws if the maximum sits on the trajectory boundary.
PeakEstimate interior_peak(const Trajectory& trajectory, int component);

} // namespace seirkit

#endif
