#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "errw/errors.hpp"
#include "errw/rational.hpp"

namespace errw::detail {

// Tiny dense row-major matrix. Everything in this project that needs linear
// algebra is a Gram or Laplacian minor of dimension at most a few dozen.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

// Determinant by partial-pivot elimination. Empty matrix has determinant 1.
inline double det_lu(Matrix<double> m) {
    if (m.rows() != m.cols()) throw domain_error("det_lu: matrix not square");
    std::size_t n = m.rows();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m.at(r, col)) > std::fabs(m.at(pivot, col))) pivot = r;
        if (m.at(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
            det = -det;
        }
        det *= m.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = m.at(r, col) / m.at(col, col);
            for (std::size_t c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
        }
    }
    return det;
}

// Exact determinant over the rationals (plain elimination; sizes are small).
inline Rational det_exact(Matrix<Rational> m) {
    if (m.rows() != m.cols()) throw domain_error("det_exact: matrix not square");
    std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m.at(pivot, col) == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
            det = -det;
        }
        det *= m.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m.at(r, col) == 0) continue;
            Rational f = m.at(r, col) / m.at(col, col);
            for (std::size_t c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
        }
    }
    return det;
}

// Log-determinant of a symmetric positive definite matrix, and its Cholesky
// factor L (lower triangular, A = L L^T). Throws if A is not SPD.
inline double cholesky(const Matrix<double>& a, Matrix<double>& lower) {
    std::size_t n = a.rows();
    if (a.cols() != n) throw domain_error("cholesky: matrix not square");
    lower = Matrix<double>(n, n);
    double log_det = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a.at(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= lower.at(i, k) * lower.at(j, k);
            if (i == j) {
                if (s <= 0.0) throw domain_error("cholesky: matrix not positive definite");
                lower.at(i, i) = std::sqrt(s);
                log_det += std::log(s);
            } else {
                lower.at(i, j) = s / lower.at(j, j);
            }
        }
    }
    return log_det;
}

// Solves L^T z = b for upper-triangular L^T given lower-triangular L.
inline std::vector<double> solve_upper_from_cholesky(const Matrix<double>& lower,
                                                     const std::vector<double>& b) {
    std::size_t n = lower.rows();
    std::vector<double> z(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= lower.at(j, ii) * z[j];
        z[ii] = s / lower.at(ii, ii);
    }
    return z;
}

} // namespace errw::detail
