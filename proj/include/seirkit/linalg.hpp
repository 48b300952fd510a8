#ifndef SEIRKIT_LINALG_HPP
#define SEIRKIT_LINALG_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace seirkit {

using Vec = std::vector<double>;
using ComplexVec = std::vector<std::complex<double>>;

// Small dense row-major matrix. Everything in this toolkit is 4x4 or
// smaller, so there is no blocking, no views, no expression machinery.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> entries);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transposed() const;
    double trace() const;
    double max_abs() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(double s, const Matrix& a);

    Vec apply(const Vec& x) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Solves A x = b by Gaussian elimination with partial pivoting.
// Throws NumericalError if A is singular to working precision.
Vec solve_linear(Matrix a, Vec b);

// One-dimensional null vector of a rank-deficient square matrix, found by
// Gaussian elimination with full pivoting: the weakest pivot column becomes
// the free variable (set to 1) and the rest is back-substituted. The result
// is unnormalized. Throws NumericalError if the matrix looks full-rank.
Vec null_vector(Matrix a);

double dot(const Vec& a, const Vec& b);
double max_abs(const Vec& v);
bool all_finite(const Vec& v);

} // namespace seirkit

#endif
