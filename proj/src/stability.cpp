#include "seirkit/stability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "seirkit/errors.hpp"

namespace seirkit {

CharPoly::CharPoly(std::vector<double> coeffs) : coefficients(std::move(coeffs)) {
    if (coefficients.empty() || coefficients.size() > 5)
        throw std::invalid_argument("CharPoly: degree must be between 0 and 4");
    if (coefficients.front() != 1.0)
        throw std::invalid_argument("CharPoly: polynomial must be monic");
    for (double c : coefficients)
        if (!std::isfinite(c)) throw std::invalid_argument("CharPoly: coefficients must be finite");
}

std::complex<double> CharPoly::eval(std::complex<double> z) const {
    std::complex<double> acc = coefficients.front();
    for (std::size_t i = 1; i < coefficients.size(); ++i) acc = acc * z + coefficients[i];
    return acc;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Unstable: return "unstable";
        default: return "non-hyperbolic";
    }
}

CharPoly characteristic_polynomial(const Matrix& matrix) {
    const std::size_t n = matrix.rows();
    if (matrix.cols() != n) throw std::invalid_argument("characteristic_polynomial: square input required");
    if (n == 0 || n > 4)
        throw std::invalid_argument("characteristic_polynomial: unsupported dimension " +
                                    std::to_string(n));
    std::vector<double> coeffs{1.0};
    Matrix m = matrix;
    double c = -m.trace();
    coeffs.push_back(c);
    for (std::size_t k = 2; k <= n; ++k) {
        m = matrix * (m + c * Matrix::identity(n));
        c = -m.trace() / static_cast<double>(k);
        coeffs.push_back(c);
    }
    return CharPoly(coeffs);
}

namespace {

using Complex = std::complex<double>;

ComplexVec quadratic_roots(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        const double q = -0.5 * (b + std::copysign(s, b));
        if (q == 0.0) return {Complex(0.0, 0.0), Complex(-b, 0.0)};
        return {Complex(q, 0.0), Complex(c / q, 0.0)};
    }
    const double re = -0.5 * b;
    const double im = 0.5 * std::sqrt(-disc);
    return {Complex(re, im), Complex(re, -im)};
}

// Derivative of a monic polynomial given highest-first coefficients.
std::vector<double> derivative(const std::vector<double>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] * (n - i);
    return d;
}

Complex horner(const std::vector<double>& c, Complex z) {
    Complex acc = c.front();
    for (std::size_t i = 1; i < c.size(); ++i) acc = acc * z + c[i];
    return acc;
}

double coeff_scale(const std::vector<double>& c) {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

// Enforce exact conjugate symmetry on roots of a real polynomial: snap
// near-real roots to the axis, average the rest into exact pairs.
void symmetrize_conjugates(ComplexVec& roots) {
    double scale = 1.0;
    for (const Complex& z : roots) scale = std::max(scale, std::abs(z));
    const double axis_tol = 1e-7 * scale;

    std::vector<bool> done(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (done[i]) continue;
        if (std::abs(roots[i].imag()) <= axis_tol) {
            roots[i] = Complex(roots[i].real(), 0.0);
            done[i] = true;
            continue;
        }
        std::size_t partner = i;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (j == i || done[j]) continue;
            const double d = std::abs(roots[j] - std::conj(roots[i]));
            if (d < best) {
                best = d;
                partner = j;
            }
        }
        if (partner == i) {
            roots[i] = Complex(roots[i].real(), 0.0); // unpaired leftover
            done[i] = true;
            continue;
        }
        const Complex z = 0.5 * (roots[i] + std::conj(roots[partner]));
        roots[i] = z;
        roots[partner] = std::conj(z);
        done[i] = done[partner] = true;
    }
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

ComplexVec aberth_roots(const std::vector<double>& coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    const std::vector<double> deriv = derivative(coeffs);
    const double radius = 1.0 + coeff_scale(coeffs); // Cauchy bound for monic input
    const double residual_bound = 1e-9 * (1.0 + coeff_scale(coeffs));

    std::mt19937_64 rng(0xA6E27BULL); // fixed seed: restarts stay reproducible
    const auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    ComplexVec best;
    double best_residual = std::numeric_limits<double>::infinity();

    for (int attempt = 0; attempt < 6; ++attempt) {
        ComplexVec z(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            double angle = 2.0 * M_PI * k / n + 0.45;
            double r = radius;
            if (attempt > 0) { // perturbed restart
                angle += 0.5 * (unit() - 0.5);
                r *= 0.5 + unit();
            }
            z[static_cast<std::size_t>(k)] = std::polar(r, angle);
        }

        bool converged = false;
        for (int iter = 0; iter < 200 && !converged; ++iter) {
            double max_step = 0.0;
            for (int i = 0; i < n; ++i) {
                const Complex zi = z[static_cast<std::size_t>(i)];
                const Complex p = horner(coeffs, zi);
                const Complex dp = horner(deriv, zi);
                if (dp == Complex(0.0, 0.0)) {
                    z[static_cast<std::size_t>(i)] += Complex(1e-6 * radius, 1e-6 * radius);
                    max_step = std::numeric_limits<double>::infinity();
                    continue;
                }
                const Complex ratio = p / dp;
                Complex repulsion(0.0, 0.0);
                for (int j = 0; j < n; ++j)
                    if (j != i) repulsion += 1.0 / (zi - z[static_cast<std::size_t>(j)]);
                const Complex denom = 1.0 - ratio * repulsion;
                const Complex step = (denom == Complex(0.0, 0.0)) ? ratio : ratio / denom;
                z[static_cast<std::size_t>(i)] -= step;
                max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(zi)));
            }
            converged = max_step < 1e-15;
        }

        double residual = 0.0;
        for (const Complex& zi : z) residual = std::max(residual, std::abs(horner(coeffs, zi)));
        if (residual < best_residual) {
            best_residual = residual;
            best = z;
        }
        if (best_residual <= residual_bound) break;
    }

    if (best_residual > residual_bound)
        throw NumericalError("polynomial_roots: iteration budget exhausted, best residual " +
                                 std::to_string(best_residual),
                             best_residual);
    return best;
}

// Synthetic division by (lambda - root); returns the quotient, stores the remainder.
std::vector<double> deflate(const std::vector<double>& coeffs, double root, double* remainder) {
    std::vector<double> q(coeffs.size() - 1);
    double acc = coeffs[0];
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
        q[i] = acc;
        acc = coeffs[i + 1] + acc * root;
    }
    *remainder = acc;
    return q;
}

} // namespace

ComplexVec polynomial_roots(const CharPoly& poly) {
    const int n = poly.degree();
    if (n < 1) throw std::invalid_argument("polynomial_roots: degree must be at least 1");
    ComplexVec roots;
    if (n == 1) {
        roots = {Complex(-poly.coefficients[1], 0.0)};
    } else if (n == 2) {
        roots = quadratic_roots(poly.coefficients[1], poly.coefficients[2]);
    } else {
        roots = aberth_roots(poly.coefficients);
    }
    symmetrize_conjugates(roots);
    return roots;
}

Verdict classify_stability(const ComplexVec& eigenvalues, double tol) {
    if (eigenvalues.empty())
        throw std::invalid_argument("classify_stability: empty eigenvalue sequence");
    if (!(tol > 0.0)) throw std::invalid_argument("classify_stability: tol must be positive");
    bool all_negative = true;
    bool any_positive = false;
    for (const auto& z : eigenvalues) {
        if (!(z.real() < -tol)) all_negative = false;
        if (z.real() > tol) any_positive = true;
    }
    if (all_negative) return Verdict::Stable;
    if (any_positive) return Verdict::Unstable;
    return Verdict::NonHyperbolic;
}

int descartes_positive_root_bound(const std::vector<double>& coefficients) {
    if (coefficients.empty() ||
        std::all_of(coefficients.begin(), coefficients.end(), [](double c) { return c == 0.0; }))
        throw std::invalid_argument("descartes_positive_root_bound: all-zero coefficients");
    if (coefficients.front() == 0.0)
        throw std::invalid_argument("descartes_positive_root_bound: leading coefficient is zero");
    int variations = 0;
    double prev = 0.0;
    for (double c : coefficients) {
        if (c == 0.0) continue;
        if (prev != 0.0 && std::signbit(c) != std::signbit(prev)) ++variations;
        prev = c;
    }
    return variations;
}

bool routh_hurwitz_cubic(double a, double b, double c) {
    return a > 0.0 && c > 0.0 && a * b - c > 0.0;
}

namespace {

double spectral_tol(const ComplexVec& eigenvalues) {
    double scale = 1.0;
    for (const auto& z : eigenvalues) scale = std::max(scale, std::abs(z));
    return 1e-9 * scale;
}

} // namespace

StabilityReport dfe_stability_report(const ModifiedSeirParams& p) {
    StabilityReport report;
    report.equilibrium = dfe(p);
    const Matrix j = modified_seir_jacobian(p, report.equilibrium.state);
    report.char_poly = characteristic_polynomial(j);

    // Peel off the (lambda + mu)^2 factor; the remainders measure how well
    // the Jacobian actually has the double root at -mu.
    double rem1 = 0.0, rem2 = 0.0;
    std::vector<double> cubic = deflate(report.char_poly.coefficients, -p.mu, &rem1);
    std::vector<double> quad = deflate(cubic, -p.mu, &rem2);
    const double scale = std::max(1.0, coeff_scale(report.char_poly.coefficients));
    report.deflation_residual = std::max(std::abs(rem1), std::abs(rem2)) / scale;
    report.factor = CharPoly(quad);

    report.eigenvalues = {Complex(-p.mu, 0.0), Complex(-p.mu, 0.0)};
    for (const auto& z : polynomial_roots(report.factor)) report.eigenvalues.push_back(z);

    report.tol = spectral_tol(report.eigenvalues);
    report.verdict = classify_stability(report.eigenvalues, report.tol);
    report.criteria["descartes"] = descartes_positive_root_bound(quad) == 0;
    report.criteria["double_root_at_minus_mu"] = report.deflation_residual <= 1e-9;
    return report;
}

StabilityReport ee_stability_report(const ModifiedSeirParams& p) {
    const auto ee = endemic_equilibrium(p);
    if (!ee)
        throw std::invalid_argument(
            "ee_stability_report: no endemic equilibrium, r0(params) <= 1");

    StabilityReport report;
    report.equilibrium = *ee;
    const Matrix j = modified_seir_jacobian(p, report.equilibrium.state);
    report.char_poly = characteristic_polynomial(j);

    double rem = 0.0;
    std::vector<double> cubic = deflate(report.char_poly.coefficients, -p.mu, &rem);
    const double scale = std::max(1.0, coeff_scale(report.char_poly.coefficients));
    report.deflation_residual = std::abs(rem) / scale;
    report.factor = CharPoly(cubic);

    report.eigenvalues = {Complex(-p.mu, 0.0)};
    for (const auto& z : polynomial_roots(report.factor)) report.eigenvalues.push_back(z);

    report.tol = spectral_tol(report.eigenvalues);
    report.verdict = classify_stability(report.eigenvalues, report.tol);
    report.criteria["routh_hurwitz"] = routh_hurwitz_cubic(cubic[1], cubic[2], cubic[3]);
    report.criteria["root_at_minus_mu"] = report.deflation_residual <= 1e-9;
    return report;
}

StateVector shifted_dfe_rhs(const ModifiedSeirParams& p, const StateVector& xyzw) {
    if (xyzw.size() != 4)
        throw std::invalid_argument("shifted_dfe_rhs: state must have length 4");
    const double x = xyzw[0], y = xyzw[1], z = xyzw[2], w = xyzw[3];
    const double s0_coupling = p.beta * p.tau / p.mu; // beta * S0 with S0 = tau/mu
    return {-p.mu * x - p.beta * x * z - s0_coupling * z,
            p.beta * x * z + s0_coupling * z - (p.mu + p.epsilon) * y,
            p.epsilon * y - (p.mu + p.gamma) * z,
            p.gamma * z - p.mu * w};
}

LyapunovCertificate lyapunov_dfe_certificate(const ModifiedSeirParams& p, long samples,
                                             double region_radius, unsigned long long seed) {
    if (samples < 1) throw std::invalid_argument("lyapunov_dfe_certificate: samples must be >= 1");
    if (!(region_radius > 0.0))
        throw std::invalid_argument("lyapunov_dfe_certificate: region_radius must be positive");

    LyapunovCertificate cert;
    cert.sample_count = samples;
    cert.seed = seed;
    cert.region_radius = region_radius;
    cert.max_v_violation = -std::numeric_limits<double>::infinity();
    cert.max_dvdt = -std::numeric_limits<double>::infinity();
    cert.identity_residual = 0.0;

    std::mt19937_64 rng(seed);
    const auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    StateVector point(4);
    for (long k = 0; k < samples; ++k) {
        for (double& c : point) c = region_radius * unit();
        const double v = point[0] + point[1] + point[2] + point[3];
        const StateVector f = shifted_dfe_rhs(p, point);
        const double dvdt = f[0] + f[1] + f[2] + f[3];
        cert.max_v_violation = std::max(cert.max_v_violation, -v);
        cert.max_dvdt = std::max(cert.max_dvdt, dvdt);
        cert.identity_residual = std::max(cert.identity_residual, std::abs(dvdt + p.mu * v));
    }

    const double drift_tol = 1e-12 * std::max(1.0, p.mu * 4.0 * region_radius);
    cert.verdict = cert.max_v_violation <= 0.0 && cert.max_dvdt <= drift_tol;
    return cert;
}

} // namespace seirkit
