#pragma once

#include <cstddef>
#include <vector>

#include "prc/error.hpp"

namespace prc {

using Vector = std::vector<double>;

/// Dense real matrix, row-major. Small and self-contained on purpose: the
/// library carries its own eigensolver, Cholesky and least-squares kernels
/// instead of depending on an external numerical package.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);
    static Matrix from_columns(const std::vector<Vector>& columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector column(std::size_t c) const;
    void set_column(std::size_t c, const Vector& v);
    std::vector<Vector> columns() const;

    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;
    Vector operator*(const Vector& rhs) const;

    /// Sum of column c scaled entries: returns A^T x (length cols).
    Vector transposed_times(const Vector& x) const;

    double frobenius_norm() const;
    double max_abs() const;
    double trace() const;

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Vector kernels.
double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
double distance(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);
Vector add(const Vector& a, const Vector& b);
Vector scaled(const Vector& a, double s);

struct EigenResult {
    Vector eigenvalues;   // descending
    Matrix eigenvectors;  // one unit-norm column per eigenvalue
};

/// Full spectrum of a symmetric matrix, eigenvalues descending.
///
/// Cyclic Jacobi rotations; sweeps stop once the off-diagonal Frobenius
/// norm falls below 1e-12 * ||A||_F, capped at 100 sweeps. Eigenvector
/// sign is fixed so the largest-magnitude entry is positive, which keeps
/// golden test outputs deterministic.
EigenResult symmetric_eig(const Matrix& a);

/// Lower-triangular L with A = L L^T. Reads the lower triangle of A.
/// Throws NotPositiveDefinite when a pivot is <= 0.
Matrix cholesky(const Matrix& a);

/// Solve L y = b (L lower triangular).
Vector solve_lower(const Matrix& l, const Vector& b);
/// Solve L^T x = b (L lower triangular).
Vector solve_lower_transposed(const Matrix& l, const Vector& b);

/// Minimum-norm beta minimizing ||A beta - b||. Rank deficiency is handled
/// by eigenvalue thresholding of A^T A at 1e-12 * lambda_max.
Vector solve_least_squares(const Matrix& a, const Vector& b);

struct PcaResult {
    Vector mean;
    Matrix basis;      // q x d, orthonormal columns
    Vector variances;  // explained variance per column, descending
};

/// PCA of column samples X (q x L), keeping d components. When L < q the
/// decomposition runs on the L x L Gram matrix of centered samples instead
/// of the q x q covariance.
PcaResult pca_fit(const Matrix& x, std::size_t d);

}  // namespace prc
