#include "seirkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "seirkit/errors.hpp"

namespace seirkit {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> entries)
    : rows_(rows), cols_(cols), data_(entries) {
    if (data_.size() != rows * cols)
        throw std::invalid_argument("Matrix: initializer size does not match dimensions");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix multiply: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("Matrix add: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("Matrix subtract: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix c = a;
    for (double& v : c.data_) v *= s;
    return c;
}

Vec Matrix::apply(const Vec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("Matrix apply: shape mismatch");
    Vec y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

Vec solve_linear(Matrix a, Vec b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n)
        throw std::invalid_argument("solve_linear: shape mismatch");
    const double scale = std::max(1.0, a.max_abs());
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) <= 1e-14 * scale)
            throw NumericalError("solve_linear: matrix is singular to working precision");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    Vec x(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
        x[ii] = s / a(ii, ii);
    }
    return x;
}

Vec null_vector(Matrix a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("null_vector: matrix must be square");
    const double scale = std::max(1.0, a.max_abs());

    std::vector<std::size_t> col_of(n);
    std::iota(col_of.begin(), col_of.end(), 0);

    // Full pivoting; the first too-weak pivot column becomes the free variable.
    std::size_t rank = 0;
    for (; rank < n; ++rank) {
        std::size_t pr = rank, pc = rank;
        double best = -1.0;
        for (std::size_t r = rank; r < n; ++r)
            for (std::size_t c = rank; c < n; ++c)
                if (std::abs(a(r, c)) > best) {
                    best = std::abs(a(r, c));
                    pr = r;
                    pc = c;
                }
        if (best <= 1e-10 * scale) break;
        if (pr != rank)
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pr, j), a(rank, j));
        if (pc != rank) {
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, pc), a(i, rank));
            std::swap(col_of[pc], col_of[rank]);
        }
        for (std::size_t r = rank + 1; r < n; ++r) {
            const double f = a(r, rank) / a(rank, rank);
            if (f == 0.0) continue;
            for (std::size_t j = rank; j < n; ++j) a(r, j) -= f * a(rank, j);
        }
    }
    if (rank == n)
        throw NumericalError("null_vector: matrix has no null direction at working precision");

    // Free variable = first unpivoted column; back-substitute the rest.
    Vec y(n, 0.0);
    y[rank] = 1.0;
    for (std::size_t ii = rank; ii-- > 0;) {
        double s = 0.0;
        for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * y[j];
        y[ii] = s / a(ii, ii);
    }
    Vec x(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) x[col_of[j]] = y[j];
    return x;
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double max_abs(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace seirkit
