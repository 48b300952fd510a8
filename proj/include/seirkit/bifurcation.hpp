#ifndef SEIRKIT_BIFURCATION_HPP
#define SEIRKIT_BIFURCATION_HPP

#include <functional>
#include <string>
#include <vector>

#include "seirkit/integrate.hpp"
#include "seirkit/linalg.hpp"
#include "seirkit/model.hpp"

namespace seirkit {

// One-parameter normal forms, plus the polar Hopf form. The sweep parameter
// is `a`; the transcritical form carries its own quadratic coefficient b.
//   SaddleNode:    x' = x^2 + a
//   Transcritical: x' = a*x - b*x^2
//   Pitchfork:     x' = x^3 - a*x
//   HopfPolar:     r' = a*r - r^3 (theta' = 1)
enum class NormalFormKind { SaddleNode, Transcritical, Pitchfork, HopfPolar };

struct NormalForm {
    NormalFormKind kind = NormalFormKind::SaddleNode;
    double b = 1.0; // only the transcritical form uses this
};

enum class BranchStability { Stable, Unstable };

struct BranchPoint {
    double param;
    double x;
    BranchStability stability;
};

double normal_form_f(const NormalForm& form, double x, double param);
double normal_form_df(const NormalForm& form, double x, double param);

// All real equilibria at one parameter value, stability from the sign of
// df/dx (stable iff negative). The Hopf form reports its radial equilibria.
std::vector<BranchPoint> normal_form_equilibria(const NormalForm& form, double param);

// Equilibria at n evenly spaced parameter values over [param_min, param_max].
std::vector<BranchPoint> sweep_diagram(const NormalForm& form, double param_min, double param_max,
                                       int n);

struct HopfCycleReport {
    double a = 0.0;
    double predicted_radius = 0.0; // sqrt(a) for a > 0, otherwise 0
    double observed_radius = 0.0;  // mean radius over the final tenth of the run
    double period_observed = 0.0;  // NaN when no full oscillation was seen
    double final_radius = 0.0;
    bool converged = false; // |observed - predicted| <= 1e-3
};

// Integrates x' = a*x - y - x(x^2+y^2), y' = x + a*y - y(x^2+y^2) from
// (initial_r, 0) and measures the attractor radius and rotation period.
// Non-convergence is reported, not thrown.
HopfCycleReport hopf_limit_cycle_check(double a, double initial_r, const StepConfig& config);

// Autonomous system with one scalar bifurcation parameter.
struct ParameterizedSystem {
    int dimension = 0;
    std::function<StateVector(const StateVector&, double param)> rhs;
    std::function<Matrix(const StateVector&, double param)> analytic_jacobian; // may be empty
};

enum class BifurcationClass { Forward, Backward, Degenerate };

const char* to_string(BifurcationClass c);

struct CenterManifoldCoefficients {
    double a = 0.0;
    double b = 0.0;
    double critical_param = 0.0;
    Vec right_vec;               // w, unit entry at the chosen pivot index
    Vec left_vec;                // v, scaled per the requested normalization
    double v_dot_w = 0.0;        // inner product of the reported vectors
    double zero_eigenvalue = 0.0; // eigenvalue actually treated as zero
    BifurcationClass classification = BifurcationClass::Degenerate;
};

// How the left null vector is scaled before the coefficient sums.
struct VNormalization {
    enum class Mode { UnitDot, Component };
    Mode mode = Mode::UnitDot;
    int component = 0; // used by Mode::Component
};

// Coefficients a = sum_k,i,j v_k w_i w_j d2f_k/dx_i dx_j and
// b = sum_k,i v_k w_i d2f_k/dx_i dparam at an equilibrium whose Jacobian has
// a simple zero eigenvalue and no other eigenvalue off the open left
// half-plane (precondition, checked). Second partials use central
// differences with step eps^(1/3) per coordinate.
CenterManifoldCoefficients center_manifold_coefficients(const ParameterizedSystem& system,
                                                        const StateVector& equilibrium,
                                                        double critical_param,
                                                        int w_unit_index = -1, // -1: last
                                                        VNormalization v_norm = {});

// Backward iff a > tol and b > tol; Forward iff a < -tol and b > tol;
// everything else is Degenerate.
BifurcationClass classify_bifurcation(double a, double b, double tol);

// The demographic SEIR model with R dropped (it decouples), parameterized
// by the infection rate beta.
ParameterizedSystem make_seir3_beta_system(double tau, double mu, double epsilon, double gamma);

// Infection rate at which the disease-free state (s0, 0, 0) of the reduced
// system turns critical: beta* = (mu+eps)(mu+gamma)/(eps*s0).
double seir3_critical_beta(double mu, double epsilon, double gamma, double s0 = 1.0);

// Center-manifold coefficients of the reduced SEIR system at its critical
// infection rate, with the conventional normalization w3 = 1, v3 = 1.
CenterManifoldCoefficients seir3_center_manifold(const ModifiedSeirParams& params);

// Critical second transmission rate of the backward model at susceptible
// level s0: beta2* = ((gamma+delta)(eps+phi+sigma) - beta1*phi*s0) / (s0*(eps+phi+sigma)).
double backward_critical_beta2(const BackwardModelParams& params, double s0 = 1.0);

// Center-manifold coefficients of the backward model at (s0, 0, 0, 0) and
// beta2 = beta2*. The Jacobian there carries a second zero eigenvalue along
// the equilibrium line (its first column vanishes), so the generic routine
// refuses it; this one works on the infected 3x3 block, where zero is
// simple, and extends the vectors with v1 = 0 and the free component w1 = 1
// (recorded in right_vec). Normalization: w3 = 1, v2 = 1.
CenterManifoldCoefficients backward_model_center_manifold(const BackwardModelParams& params,
                                                          double s0 = 1.0);

} // namespace seirkit

#endif
