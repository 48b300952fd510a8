#include "seirkit/bifurcation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "seirkit/errors.hpp"
#include "seirkit/stability.hpp"

namespace seirkit {

double normal_form_f(const NormalForm& form, double x, double a) {
    switch (form.kind) {
        case NormalFormKind::SaddleNode: return x * x + a;
        case NormalFormKind::Transcritical: return a * x - form.b * x * x;
        case NormalFormKind::Pitchfork: return x * x * x - a * x;
        case NormalFormKind::HopfPolar: return a * x - x * x * x;
    }
    return 0.0;
}

double normal_form_df(const NormalForm& form, double x, double a) {
    switch (form.kind) {
        case NormalFormKind::SaddleNode: return 2.0 * x;
        case NormalFormKind::Transcritical: return a - 2.0 * form.b * x;
        case NormalFormKind::Pitchfork: return 3.0 * x * x - a;
        case NormalFormKind::HopfPolar: return a - 3.0 * x * x;
    }
    return 0.0;
}

namespace {

BranchPoint branch(const NormalForm& form, double a, double x) {
    const double slope = normal_form_df(form, x, a);
    return {a, x, slope < 0.0 ? BranchStability::Stable : BranchStability::Unstable};
}

} // namespace

std::vector<BranchPoint> normal_form_equilibria(const NormalForm& form, double a) {
    std::vector<BranchPoint> out;
    switch (form.kind) {
        case NormalFormKind::SaddleNode:
            if (a < 0.0) {
                const double r = std::sqrt(-a);
                out.push_back(branch(form, a, -r));
                out.push_back(branch(form, a, r));
            } else if (a == 0.0) {
                out.push_back(branch(form, a, 0.0));
            }
            break;
        case NormalFormKind::Transcritical:
            out.push_back(branch(form, a, 0.0));
            out.push_back(branch(form, a, a / form.b));
            break;
        case NormalFormKind::Pitchfork:
            out.push_back(branch(form, a, 0.0));
            if (a > 0.0) {
                const double r = std::sqrt(a);
                out.push_back(branch(form, a, -r));
                out.push_back(branch(form, a, r));
            }
            break;
        case NormalFormKind::HopfPolar:
            out.push_back(branch(form, a, 0.0));
            if (a > 0.0) out.push_back(branch(form, a, std::sqrt(a)));
            break;
    }
    return out;
}

std::vector<BranchPoint> sweep_diagram(const NormalForm& form, double param_min, double param_max,
                                       int n) {
    if (n < 2) throw std::invalid_argument("sweep_diagram: need at least two parameter values");
    if (!(param_min < param_max))
        throw std::invalid_argument("sweep_diagram: param_min must be below param_max");
    std::vector<BranchPoint> out;
    for (int i = 0; i < n; ++i) {
        const double a = param_min + (param_max - param_min) * i / (n - 1);
        for (const BranchPoint& bp : normal_form_equilibria(form, a)) out.push_back(bp);
    }
    return out;
}

HopfCycleReport hopf_limit_cycle_check(double a, double initial_r, const StepConfig& config) {
    if (!(initial_r > 0.0))
        throw std::invalid_argument("hopf_limit_cycle_check: initial_r must be positive");
    if (a > 0.0 && initial_r == std::sqrt(a))
        throw std::invalid_argument("hopf_limit_cycle_check: initial_r must differ from sqrt(a)");

    DynamicalSystem planar;
    planar.dimension = 2;
    planar.rhs = [a](double, const StateVector& s) -> StateVector {
        const double x = s[0], y = s[1];
        const double rr = x * x + y * y;
        return {a * x - y - x * rr, x + a * y - y * rr};
    };

    const Trajectory traj = simulate(planar, {initial_r, 0.0}, config);
    const std::size_t n = traj.times.size();

    HopfCycleReport report;
    report.a = a;
    report.predicted_radius = a > 0.0 ? std::sqrt(a) : 0.0;

    const std::size_t tail_start = n - std::max<std::size_t>(1, n / 10);
    double radius_sum = 0.0;
    for (std::size_t i = tail_start; i < n; ++i)
        radius_sum += std::hypot(traj.states[i][0], traj.states[i][1]);
    report.observed_radius = radius_sum / static_cast<double>(n - tail_start);
    report.final_radius = std::hypot(traj.states[n - 1][0], traj.states[n - 1][1]);

    // Period from upward zero crossings of y over the second half of the run.
    report.period_observed = std::numeric_limits<double>::quiet_NaN();
    double first_cross = 0.0, last_cross = 0.0;
    int crossings = 0;
    for (std::size_t i = n / 2; i + 1 < n; ++i) {
        const double y0 = traj.states[i][1], y1 = traj.states[i + 1][1];
        if (y0 < 0.0 && y1 >= 0.0) {
            const double t = traj.times[i] +
                             (traj.times[i + 1] - traj.times[i]) * (-y0) / (y1 - y0);
            if (crossings == 0) first_cross = t;
            last_cross = t;
            ++crossings;
        }
    }
    if (crossings >= 2)
        report.period_observed = (last_cross - first_cross) / (crossings - 1);

    report.converged = std::abs(report.observed_radius - report.predicted_radius) <= 1e-3;
    return report;
}

const char* to_string(BifurcationClass c) {
    switch (c) {
        case BifurcationClass::Forward: return "forward";
        case BifurcationClass::Backward: return "backward";
        default: return "degenerate";
    }
}

BifurcationClass classify_bifurcation(double a, double b, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("classify_bifurcation: tol must be positive");
    if (b > tol) {
        if (a > tol) return BifurcationClass::Backward;
        if (a < -tol) return BifurcationClass::Forward;
    }
    return BifurcationClass::Degenerate;
}

namespace {

Matrix parameterized_jacobian(const ParameterizedSystem& sys, const StateVector& x0,
                              double param) {
    if (sys.analytic_jacobian) return sys.analytic_jacobian(x0, param);
    DynamicalSystem frozen;
    frozen.dimension = sys.dimension;
    frozen.rhs = [&sys, param](double, const StateVector& x) { return sys.rhs(x, param); };
    return numeric_jacobian(frozen, x0);
}

double fd_step(double value) {
    return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(value));
}

// a = sum_{k,i,j} v_k w_i w_j d2 f_k / dx_i dx_j at (x0, param).
double ccs_a_sum(const ParameterizedSystem& sys, const StateVector& x0, double param,
                 const Vec& v, const Vec& w) {
    const std::size_t n = x0.size();
    double total = 0.0;
    StateVector probe = x0;
    for (std::size_t i = 0; i < n; ++i) {
        const double hi = fd_step(x0[i]);
        for (std::size_t j = 0; j <= i; ++j) {
            StateVector d2(n);
            if (i == j) {
                probe[i] = x0[i] + hi;
                const StateVector fp = sys.rhs(probe, param);
                probe[i] = x0[i] - hi;
                const StateVector fm = sys.rhs(probe, param);
                probe[i] = x0[i];
                const StateVector f0 = sys.rhs(x0, param);
                for (std::size_t k = 0; k < n; ++k)
                    d2[k] = (fp[k] - 2.0 * f0[k] + fm[k]) / (hi * hi);
            } else {
                const double hj = fd_step(x0[j]);
                probe[i] = x0[i] + hi;
                probe[j] = x0[j] + hj;
                const StateVector fpp = sys.rhs(probe, param);
                probe[j] = x0[j] - hj;
                const StateVector fpm = sys.rhs(probe, param);
                probe[i] = x0[i] - hi;
                const StateVector fmm = sys.rhs(probe, param);
                probe[j] = x0[j] + hj;
                const StateVector fmp = sys.rhs(probe, param);
                probe[i] = x0[i];
                probe[j] = x0[j];
                for (std::size_t k = 0; k < n; ++k)
                    d2[k] = (fpp[k] - fpm[k] - fmp[k] + fmm[k]) / (4.0 * hi * hj);
            }
            const double weight = (i == j) ? w[i] * w[j] : 2.0 * w[i] * w[j]; // (i,j) and (j,i)
            for (std::size_t k = 0; k < n; ++k) total += v[k] * weight * d2[k];
        }
    }
    return total;
}

// b = sum_{k,i} v_k w_i d2 f_k / dx_i dparam at (x0, param).
double ccs_b_sum(const ParameterizedSystem& sys, const StateVector& x0, double param,
                 const Vec& v, const Vec& w) {
    const std::size_t n = x0.size();
    const double hp = fd_step(param);
    double total = 0.0;
    StateVector probe = x0;
    for (std::size_t i = 0; i < n; ++i) {
        const double hi = fd_step(x0[i]);
        probe[i] = x0[i] + hi;
        const StateVector fpp = sys.rhs(probe, param + hp);
        const StateVector fpm = sys.rhs(probe, param - hp);
        probe[i] = x0[i] - hi;
        const StateVector fmp = sys.rhs(probe, param + hp);
        const StateVector fmm = sys.rhs(probe, param - hp);
        probe[i] = x0[i];
        for (std::size_t k = 0; k < n; ++k)
            total += v[k] * w[i] * (fpp[k] - fpm[k] - fmp[k] + fmm[k]) / (4.0 * hi * hp);
    }
    return total;
}

Vec normalize_by_component(Vec vec, std::size_t index, const char* label) {
    const double pivot = vec[index];
    if (std::abs(pivot) <= 1e-12 * std::max(1.0, max_abs(vec)))
        throw NumericalError(std::string(label) +
                             ": normalizing component is numerically zero");
    for (double& c : vec) {
        c /= pivot;
        if (c == 0.0) c = 0.0; // normalize the sign of zero for clean output
    }
    return vec;
}

CenterManifoldCoefficients finish_coefficients(const ParameterizedSystem& sys,
                                               const StateVector& equilibrium,
                                               double critical_param, Vec w, Vec v,
                                               double zero_eig) {
    CenterManifoldCoefficients out;
    out.critical_param = critical_param;
    out.zero_eigenvalue = zero_eig;
    out.right_vec = std::move(w);
    out.left_vec = std::move(v);
    out.v_dot_w = dot(out.left_vec, out.right_vec);
    out.a = ccs_a_sum(sys, equilibrium, critical_param, out.left_vec, out.right_vec);
    out.b = ccs_b_sum(sys, equilibrium, critical_param, out.left_vec, out.right_vec);
    const double tol = 1e-9 * std::max({1.0, std::abs(out.a), std::abs(out.b)});
    out.classification = classify_bifurcation(out.a, out.b, tol);
    return out;
}

} // namespace

CenterManifoldCoefficients center_manifold_coefficients(const ParameterizedSystem& sys,
                                                        const StateVector& equilibrium,
                                                        double critical_param, int w_unit_index,
                                                        VNormalization v_norm) {
    const std::size_t n = static_cast<std::size_t>(sys.dimension);
    if (equilibrium.size() != n)
        throw std::invalid_argument("center_manifold_coefficients: equilibrium length mismatch");

    const Matrix j = parameterized_jacobian(sys, equilibrium, critical_param);
    const ComplexVec eigs = polynomial_roots(characteristic_polynomial(j));

    double scale = 1.0;
    for (const auto& z : eigs) scale = std::max(scale, std::abs(z));
    const double zero_tol = 1e-6 * scale;

    int zero_count = 0;
    std::complex<double> zero_eig;
    for (const auto& z : eigs) {
        if (std::abs(z) <= zero_tol) {
            ++zero_count;
            zero_eig = z;
        } else if (!(z.real() < -1e-9 * scale)) {
            throw std::invalid_argument(
                "center_manifold_coefficients: an eigenvalue away from zero has nonnegative "
                "real part");
        }
    }
    if (zero_count == 0)
        throw std::invalid_argument("center_manifold_coefficients: no eigenvalue near zero");
    if (zero_count > 1)
        throw std::invalid_argument(
            "center_manifold_coefficients: zero eigenvalue is not simple");

    const double lambda0 = zero_eig.real();
    const Matrix shifted = j - lambda0 * Matrix::identity(n);
    const std::size_t widx =
        w_unit_index < 0 ? n - 1 : static_cast<std::size_t>(w_unit_index);
    if (widx >= n)
        throw std::invalid_argument("center_manifold_coefficients: w_unit_index out of range");

    Vec w = normalize_by_component(null_vector(shifted), widx, "right null vector");
    Vec v = null_vector(shifted.transposed());
    if (v_norm.mode == VNormalization::Mode::Component) {
        const std::size_t vidx = static_cast<std::size_t>(v_norm.component);
        if (vidx >= n)
            throw std::invalid_argument("center_manifold_coefficients: v component out of range");
        v = normalize_by_component(std::move(v), vidx, "left null vector");
    } else {
        const double d = dot(v, w);
        if (std::abs(d) <= 1e-12 * std::max(1.0, max_abs(v) * max_abs(w)))
            throw NumericalError("center_manifold_coefficients: v.w is numerically zero");
        for (double& c : v) c /= d;
    }

    return finish_coefficients(sys, equilibrium, critical_param, std::move(w), std::move(v),
                               lambda0);
}

ParameterizedSystem make_seir3_beta_system(double tau, double mu, double epsilon, double gamma) {
    ParameterizedSystem sys;
    sys.dimension = 3;
    sys.rhs = [tau, mu, epsilon, gamma](const StateVector& x, double beta) -> StateVector {
        return {tau - beta * x[0] * x[2] - mu * x[0],
                beta * x[0] * x[2] - (mu + epsilon) * x[1],
                epsilon * x[1] - (mu + gamma) * x[2]};
    };
    sys.analytic_jacobian = [mu, epsilon, gamma](const StateVector& x, double beta) {
        return Matrix(3, 3,
                      {-beta * x[2] - mu, 0.0, -beta * x[0],
                       beta * x[2], -(mu + epsilon), beta * x[0],
                       0.0, epsilon, -(mu + gamma)});
    };
    return sys;
}

double seir3_critical_beta(double mu, double epsilon, double gamma, double s0) {
    return (mu + epsilon) * (mu + gamma) / (epsilon * s0);
}

CenterManifoldCoefficients seir3_center_manifold(const ModifiedSeirParams& p) {
    const ParameterizedSystem sys = make_seir3_beta_system(p.tau, p.mu, p.epsilon, p.gamma);
    const double beta_star = seir3_critical_beta(p.mu, p.epsilon, p.gamma, p.tau / p.mu);
    const StateVector equilibrium{p.tau / p.mu, 0.0, 0.0};
    VNormalization v_norm;
    v_norm.mode = VNormalization::Mode::Component;
    v_norm.component = 2;
    return center_manifold_coefficients(sys, equilibrium, beta_star, 2, v_norm);
}

double backward_critical_beta2(const BackwardModelParams& p, double s0) {
    if (!(s0 > 0.0)) throw std::invalid_argument("backward_critical_beta2: s0 must be positive");
    const double eps_block = p.epsilon + p.phi + p.sigma;
    return ((p.gamma + p.delta) * eps_block - p.beta1 * p.phi * s0) / (s0 * eps_block);
}

CenterManifoldCoefficients backward_model_center_manifold(const BackwardModelParams& p,
                                                          double s0) {
    const double beta2_star = backward_critical_beta2(p, s0);
    if (!(beta2_star > 0.0))
        throw std::invalid_argument(
            "backward_model_center_manifold: critical beta2 is not positive for these rates");

    const double eps_block = p.epsilon + p.phi + p.sigma;

    // Infected block (x2, x3, x4) of the Jacobian at (s0, 0, 0, 0).
    const Matrix block(3, 3,
                       {-eps_block, p.beta1 * s0, 0.0,
                        p.phi, beta2_star * s0 - (p.gamma + p.delta), 0.0,
                        0.0, p.gamma, -p.alpha});

    const ComplexVec eigs = polynomial_roots(characteristic_polynomial(block));
    double scale = 1.0;
    for (const auto& z : eigs) scale = std::max(scale, std::abs(z));
    double lambda0 = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& z : eigs)
        if (std::abs(z) < best) {
            best = std::abs(z);
            lambda0 = z.real();
        }
    if (best > 1e-6 * scale)
        throw NumericalError("backward_model_center_manifold: infected block is not critical");

    const Matrix shifted = block - lambda0 * Matrix::identity(3);
    const Vec wb = normalize_by_component(null_vector(shifted), 1, "right null vector");
    const Vec vb = normalize_by_component(null_vector(shifted.transposed()), 0,
                                          "left null vector");

    // Extend to the full state: v1 = 0 kills the equilibrium-line direction;
    // w1 stays free along that line and is fixed at 1.
    Vec w{1.0, wb[0], wb[1], wb[2]};
    Vec v{0.0, vb[0], vb[1], vb[2]};

    ParameterizedSystem sys;
    sys.dimension = 4;
    sys.rhs = [p](const StateVector& x, double beta2) -> StateVector {
        return {-(p.beta1 + beta2) * x[0] * x[2] + p.epsilon * x[1] + p.alpha * x[3],
                p.beta1 * x[0] * x[2] - (p.epsilon + p.phi + p.sigma) * x[1],
                beta2 * x[0] * x[2] - (p.gamma + p.delta) * x[2] + p.phi * x[1],
                p.gamma * x[2] - p.alpha * x[3]};
    };

    return finish_coefficients(sys, {s0, 0.0, 0.0, 0.0}, beta2_star, std::move(w), std::move(v),
                               lambda0);
}

} // namespace seirkit
