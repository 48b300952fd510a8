#ifndef SEIRKIT_STABILITY_HPP
#define SEIRKIT_STABILITY_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "seirkit/equilibria.hpp"
#include "seirkit/linalg.hpp"
#include "seirkit/model.hpp"

namespace seirkit {

// Monic real polynomial of degree <= 4, coefficients highest degree first.
struct CharPoly {
    std::vector<double> coefficients;

    CharPoly() : coefficients{1.0} {}
    explicit CharPoly(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    std::complex<double> eval(std::complex<double> z) const;
};

enum class Verdict { Stable, Unstable, NonHyperbolic };

const char* to_string(Verdict v);

// Faddeev-LeVerrier recursion; exact in the matrix entries up to roundoff.
// Supports n <= 4 only.
CharPoly characteristic_polynomial(const Matrix& matrix);

// All roots with multiplicity. Degrees 1 and 2 use closed forms; degrees 3
// and 4 use Aberth-Ehrlich simultaneous iteration with a 200-iteration
// budget and seeded perturbation restarts. Real input keeps conjugate pairs
// exactly paired. Root order is deterministic (by real part, then imaginary).
ComplexVec polynomial_roots(const CharPoly& poly);

Verdict classify_stability(const ComplexVec& eigenvalues, double tol);

// Number of sign variations among the nonzero coefficients: Descartes'
// bound on the count of positive real roots.
int descartes_positive_root_bound(const std::vector<double>& coefficients);

// Routh-Hurwitz test for the monic cubic l^3 + A*l^2 + B*l + C: all roots in
// the open left half-plane iff A > 0, C > 0 and A*B - C > 0.
bool routh_hurwitz_cubic(double a, double b, double c);

struct StabilityReport {
    EquilibriumPoint equilibrium;
    ComplexVec eigenvalues;
    Verdict verdict;
    double tol;                // hyperbolicity tolerance used for the verdict
    CharPoly char_poly;        // quartic of the Jacobian at the equilibrium
    CharPoly factor;           // factor left after removing the (lambda + mu) roots
    double deflation_residual; // largest remainder from removing those roots
    std::map<std::string, bool> criteria;
};

// Jacobian spectrum at the disease-free equilibrium. The quartic factors as
// (lambda + mu)^2 (lambda^2 + a1 lambda + a2); the double root at -mu is
// verified by synthetic division (residual recorded) and the quadratic
// factor drives both the Descartes criterion and the eigenvalue verdict.
StabilityReport dfe_stability_report(const ModifiedSeirParams& params);

// Same at the endemic equilibrium (requires r0 > 1): one (lambda + mu) root
// plus a cubic whose coefficients feed the Routh-Hurwitz criterion.
StabilityReport ee_stability_report(const ModifiedSeirParams& params);

// The demographic SEIR system in coordinates shifted so the disease-free
// equilibrium sits at the origin: x = S - tau/mu, y = E, z = I, w = R.
StateVector shifted_dfe_rhs(const ModifiedSeirParams& params, const StateVector& xyzw);

struct LyapunovCertificate {
    long sample_count = 0;
    unsigned long long seed = 0;
    double region_radius = 0.0;
    double max_v_violation = 0.0;   // max of -V over samples; <= 0 means V >= 0 held
    double max_dvdt = 0.0;          // max of dV/dt over samples; <= 0 expected
    double identity_residual = 0.0; // max |dV/dt + mu*(x+y+z+w)|
    bool verdict = false;
};

// Samples the shifted admissible region (coordinates in [0, radius]) and
// checks the linear Lyapunov function V = x + y + z + w: positivity off the
// origin, nonpositive drift, and the pointwise identity dV/dt = -mu*V.
LyapunovCertificate lyapunov_dfe_certificate(const ModifiedSeirParams& params, long samples,
                                             double region_radius,
                                             unsigned long long seed = 12345ULL);

} // namespace seirkit

#endif
