#include "seirkit/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "seirkit/errors.hpp"

namespace seirkit {

StepConfig::StepConfig(double dt_, double t_start_, double t_end_)
    : dt(dt_), t_start(t_start_), t_end(t_end_) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("StepConfig: dt must be positive and finite");
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || t_end <= t_start)
        throw std::invalid_argument("StepConfig: t_end must exceed t_start");
    if ((t_end - t_start) / dt < 1.0)
        throw std::invalid_argument("StepConfig: span must cover at least one step");
}

namespace {

StateVector axpy(const StateVector& x, double a, const StateVector& y) {
    StateVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + a * y[i];
    return r;
}

} // namespace

StateVector rk4_step(const DynamicalSystem& system, double t, const StateVector& state,
                     double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
    const auto stage = [&](const char* name, double ts, const StateVector& xs) {
        StateVector k = system.rhs(ts, xs);
        if (!all_finite(k))
            throw NumericalError(std::string("rk4_step: stage ") + name +
                                 " is non-finite at t = " + std::to_string(ts));
        return k;
    };
    const StateVector k1 = stage("k1", t, state);
    const StateVector k2 = stage("k2", t + dt / 2.0, axpy(state, dt / 2.0, k1));
    const StateVector k3 = stage("k3", t + dt / 2.0, axpy(state, dt / 2.0, k2));
    const StateVector k4 = stage("k4", t + dt, axpy(state, dt, k3));

    StateVector out(state.size());
    for (std::size_t i = 0; i < state.size(); ++i)
        out[i] = state[i] + dt * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
    return out;
}

Trajectory simulate(const DynamicalSystem& system, const StateVector& initial,
                    const StepConfig& config) {
    if (static_cast<int>(initial.size()) != system.dimension)
        throw std::invalid_argument("simulate: initial state length does not match dimension");
    if (!all_finite(initial))
        throw std::invalid_argument("simulate: initial state must be finite");

    const double span = config.t_end - config.t_start;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(span / config.dt - 1e-12));
    double population = 0.0; // population size fixes the undershoot tolerance
    for (double v : initial) population += std::abs(v);
    const double clamp_scale = std::max(1.0, population);

    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.times.push_back(config.t_start);
    traj.states.push_back(initial);

    StateVector x = initial;
    double t = config.t_start;
    for (std::size_t i = 0; i < steps; ++i) {
        const bool last = (i + 1 == steps);
        const double dt = last ? (config.t_end - t) : config.dt;
        try {
            x = rk4_step(system, t, x, dt);
            if (system.nonnegative_state) traj.clamp_count += clamp_nonnegative(x, clamp_scale);
        } catch (const NumericalError& e) {
            throw NumericalError(std::string(e.what()) + " (step " + std::to_string(i) +
                                 ", t = " + std::to_string(t) + ")");
        }
        t = last ? config.t_end : config.t_start + static_cast<double>(i + 1) * config.dt;
        traj.times.push_back(t);
        traj.states.push_back(x);
    }
    return traj;
}

double convergence_order(const DynamicalSystem& system, const StateVector& initial, double t_end,
                         double dt0) {
    if (!(dt0 > 0.0)) throw std::invalid_argument("convergence_order: dt0 must be positive");
    const double t_start = 0.0;
    const auto final_state = [&](double dt) {
        return simulate(system, initial, StepConfig(dt, t_start, t_end)).states.back();
    };
    const StateVector ref = final_state(dt0 / 8.0);
    double err[3];
    const double dts[3] = {dt0, dt0 / 2.0, dt0 / 4.0};
    for (int i = 0; i < 3; ++i) {
        const StateVector x = final_state(dts[i]);
        double e = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) e = std::max(e, std::abs(x[k] - ref[k]));
        err[i] = e;
    }
    if (!(err[0] > 0.0) || !(err[1] > 0.0) || !(err[2] > 0.0) || err[1] >= err[0] ||
        err[2] >= err[1])
        throw NumericalError(
            "convergence_order: degenerate measurement, error ratios are not positive");
    return (std::log2(err[0] / err[1]) + std::log2(err[1] / err[2])) / 2.0;
}

PeakEstimate interior_peak(const Trajectory& trajectory, int component) {
    const std::size_t n = trajectory.times.size();
    if (n < 3) throw std::invalid_argument("interior_peak: need at least three samples");
    const std::size_t c = static_cast<std::size_t>(component);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (trajectory.states[i][c] > trajectory.states[arg][c]) arg = i;
    if (arg == 0 || arg + 1 == n)
        throw NumericalError("interior_peak: maximum lies on the trajectory boundary");

    // Parabola through the three samples around the discrete argmax. The
    // final step may be shortened, so allow uneven spacing.
    const double t0 = trajectory.times[arg - 1], t1 = trajectory.times[arg],
                 t2 = trajectory.times[arg + 1];
    const double y0 = trajectory.states[arg - 1][c], y1 = trajectory.states[arg][c],
                 y2 = trajectory.states[arg + 1][c];
    const double d01 = (y1 - y0) / (t1 - t0);
    const double d12 = (y2 - y1) / (t2 - t1);
    const double curv = (d12 - d01) / (t2 - t0); // second divided difference
    if (!(curv < 0.0)) return {t1, y1};          // flat or noisy top
    const double tp = 0.5 * (t0 + t1 - d01 / curv);
    const double yp = y0 + d01 * (tp - t0) + curv * (tp - t0) * (tp - t1);
    return {tp, yp};
}

} // namespace seirkit
