#include "prc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace prc {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonSquare: return "NonSquare";
        case ErrorKind::Asymmetric: return "Asymmetric";
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::BadDimension: return "BadDimension";
        case ErrorKind::DegenerateLine: return "DegenerateLine";
        case ErrorKind::EmptyModel: return "EmptyModel";
        case ErrorKind::NoClasses: return "NoClasses";
        case ErrorKind::EmptyDataset: return "EmptyDataset";
        case ErrorKind::ClassTooSmall: return "ClassTooSmall";
        case ErrorKind::Io: return "Io";
        case ErrorKind::Parse: return "Parse";
        case ErrorKind::RaggedRows: return "RaggedRows";
        case ErrorKind::NonFiniteValue: return "NonFiniteValue";
        case ErrorKind::BadSpec: return "BadSpec";
        case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    }
    return "Unknown";
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns) {
    if (columns.empty()) return Matrix();
    const std::size_t rows = columns.front().size();
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows)
            throw Error(ErrorKind::DimensionMismatch, "columns differ in length");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

void Matrix::set_column(std::size_t c, const Vector& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

std::vector<Vector> Matrix::columns() const {
    std::vector<Vector> cols(cols_);
    for (std::size_t c = 0; c < cols_; ++c) cols[c] = column(c);
    return cols;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double v = (*this)(r, k);
            if (v == 0.0) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += v * rhs(k, c);
        }
    }
    return out;
}

Vector Matrix::operator*(const Vector& rhs) const {
    if (cols_ != rhs.size())
        throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
    Vector out(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * rhs[c];
        out[r] = acc;
    }
    return out;
}

Vector Matrix::transposed_times(const Vector& x) const {
    if (rows_ != x.size())
        throw Error(ErrorKind::DimensionMismatch, "matrix^T-vector shape mismatch");
    Vector out(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        const double v = x[r];
        for (std::size_t c = 0; c < cols_; ++c) out[c] += (*this)(r, c) * v;
    }
    return out;
}

double Matrix::frobenius_norm() const {
    double acc = 0.0;
    for (double v : data_) acc += v * v;
    return std::sqrt(acc);
}

double Matrix::max_abs() const {
    double acc = 0.0;
    for (double v : data_) acc = std::max(acc, std::abs(v));
    return acc;
}

double Matrix::trace() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
    return acc;
}

double dot(const Vector& a, const Vector& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

double distance(const Vector& a, const Vector& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

Vector subtract(const Vector& a, const Vector& b) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vector add(const Vector& a, const Vector& b) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vector scaled(const Vector& a, double s) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

namespace {

double off_diagonal_norm(const Matrix& w) {
    double acc = 0.0;
    const std::size_t n = w.rows();
    for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) acc += w(p, q) * w(p, q);
    return std::sqrt(2.0 * acc);
}

// Flip each column so its largest-magnitude entry is positive.
void fix_column_signs(Matrix& v) {
    for (std::size_t c = 0; c < v.cols(); ++c) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t r = 0; r < v.rows(); ++r) {
            const double a = std::abs(v(r, c));
            if (a > best) {
                best = a;
                arg = r;
            }
        }
        if (v(arg, c) < 0.0)
            for (std::size_t r = 0; r < v.rows(); ++r) v(r, c) = -v(r, c);
    }
}

}  // namespace

EigenResult symmetric_eig(const Matrix& a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw Error(ErrorKind::NonSquare, "eigendecomposition needs a square matrix");
    if (n == 0) throw Error(ErrorKind::NonSquare, "empty matrix");

    double asym = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) asym = std::max(asym, std::abs(a(p, q) - a(q, p)));
    if (asym > 1e-9 * (1.0 + a.max_abs()))
        throw Error(ErrorKind::Asymmetric, "matrix is not symmetric within tolerance");

    Matrix w(n, n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) w(p, q) = 0.5 * (a(p, q) + a(q, p));
    Matrix v = Matrix::identity(n);

    const double threshold = 1e-12 * w.frobenius_norm();
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_diagonal_norm(w) <= threshold) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double wpq = w(p, q);
                if (wpq == 0.0) continue;
                const double theta = (w(q, q) - w(p, p)) / (2.0 * wpq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double wkp = w(k, p);
                    const double wkq = w(k, q);
                    w(k, p) = w(p, k) = c * wkp - s * wkq;
                    w(k, q) = w(q, k) = s * wkp + c * wkq;
                }
                const double wpp = w(p, p);
                const double wqq = w(q, q);
                w(p, p) = c * c * wpp - 2.0 * s * c * wpq + s * s * wqq;
                w(q, q) = s * s * wpp + 2.0 * s * c * wpq + c * c * wqq;
                w(p, q) = w(q, p) = 0.0;

                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return w(i, i) > w(j, j); });

    EigenResult result;
    result.eigenvalues.resize(n);
    result.eigenvectors = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        result.eigenvalues[c] = w(order[c], order[c]);
        for (std::size_t r = 0; r < n; ++r) result.eigenvectors(r, c) = v(r, order[c]);
    }
    fix_column_signs(result.eigenvectors);
    return result;
}

Matrix cholesky(const Matrix& a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw Error(ErrorKind::NonSquare, "Cholesky needs a square matrix");
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0)
                    throw Error(ErrorKind::NotPositiveDefinite, "pivot <= 0 at row " + std::to_string(i));
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

Vector solve_lower(const Matrix& l, const Vector& b) {
    const std::size_t n = l.rows();
    if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "triangular solve shape mismatch");
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    return y;
}

Vector solve_lower_transposed(const Matrix& l, const Vector& b) {
    const std::size_t n = l.rows();
    if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "triangular solve shape mismatch");
    Vector x(n);
    for (std::size_t ii = n; ii > 0; --ii) {
        const std::size_t i = ii - 1;
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
        x[i] = s / l(i, i);
    }
    return x;
}

Vector solve_least_squares(const Matrix& a, const Vector& b) {
    const std::size_t q = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != q) throw Error(ErrorKind::DimensionMismatch, "least-squares shape mismatch");
    if (q == 0 || n == 0) throw Error(ErrorKind::DimensionMismatch, "empty system");

    // Normal equations with a pseudo-inverse of A^T A; eigenvalues below
    // 1e-12 * lambda_max are treated as rank deficiency, which yields the
    // minimum-norm solution.
    Matrix ata(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < q; ++r) s += a(r, i) * a(r, j);
            ata(i, j) = ata(j, i) = s;
        }
    }
    const Vector atb = a.transposed_times(b);

    const EigenResult eig = symmetric_eig(ata);
    const double lambda_max = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
    const double tau = 1e-12 * lambda_max;

    Vector beta(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = eig.eigenvalues[k];
        if (lambda <= tau || lambda <= 0.0) continue;
        const Vector vk = eig.eigenvectors.column(k);
        const double coeff = dot(vk, atb) / lambda;
        for (std::size_t i = 0; i < n; ++i) beta[i] += coeff * vk[i];
    }
    return beta;
}

namespace {

// Orthonormalize `v` against accepted columns of `basis` (first `count`),
// in place. Returns the norm left after deflation.
double deflate(const Matrix& basis, std::size_t count, Vector& v) {
    for (std::size_t c = 0; c < count; ++c) {
        double proj = 0.0;
        for (std::size_t r = 0; r < v.size(); ++r) proj += basis(r, c) * v[r];
        for (std::size_t r = 0; r < v.size(); ++r) v[r] -= proj * basis(r, c);
    }
    return norm(v);
}

// Canonical vector with the largest residual against the accepted columns;
// used to pad rank-deficient bases deterministically. With count < q the
// residuals sum to q - count, so the best one is always nonzero.
Vector complete_column(const Matrix& basis, std::size_t count) {
    const std::size_t q = basis.rows();
    std::size_t best = 0;
    double best_rem = -1.0;
    for (std::size_t cand = 0; cand < q; ++cand) {
        Vector v(q, 0.0);
        v[cand] = 1.0;
        const double rem = deflate(basis, count, v);
        if (rem > best_rem) {
            best_rem = rem;
            best = cand;
        }
    }
    Vector v(q, 0.0);
    v[best] = 1.0;
    const double rem = deflate(basis, count, v);
    for (double& x : v) x /= rem;
    return v;
}

}  // namespace

PcaResult pca_fit(const Matrix& x, std::size_t d) {
    const std::size_t q = x.rows();
    const std::size_t samples = x.cols();
    if (q == 0 || samples == 0) throw Error(ErrorKind::BadDimension, "empty sample matrix");
    if (d < 1 || d > std::min(q, samples))
        throw Error(ErrorKind::BadDimension, "component count out of range");

    PcaResult result;
    result.mean.assign(q, 0.0);
    for (std::size_t c = 0; c < samples; ++c)
        for (std::size_t r = 0; r < q; ++r) result.mean[r] += x(r, c);
    for (double& m : result.mean) m /= static_cast<double>(samples);

    Matrix centered(q, samples);
    for (std::size_t c = 0; c < samples; ++c)
        for (std::size_t r = 0; r < q; ++r) centered(r, c) = x(r, c) - result.mean[r];

    const double denom = samples > 1 ? static_cast<double>(samples - 1) : 1.0;
    result.basis = Matrix(q, d);
    result.variances.assign(d, 0.0);

    if (samples < q) {
        // Gram-matrix route: eigenvectors of X^T X lift to covariance
        // eigenvectors via u = X v / sqrt(mu).
        Matrix gram(samples, samples);
        for (std::size_t i = 0; i < samples; ++i) {
            for (std::size_t j = i; j < samples; ++j) {
                double s = 0.0;
                for (std::size_t r = 0; r < q; ++r) s += centered(r, i) * centered(r, j);
                gram(i, j) = gram(j, i) = s;
            }
        }
        const EigenResult eig = symmetric_eig(gram);
        const double mu_max = std::max(eig.eigenvalues.front(), 0.0);
        std::size_t filled = 0;
        for (std::size_t k = 0; k < d; ++k) {
            const double mu = eig.eigenvalues[k];
            if (mu > 1e-12 * mu_max && mu > 0.0) {
                const Vector vk = eig.eigenvectors.column(k);
                Vector u(q, 0.0);
                for (std::size_t c = 0; c < samples; ++c) {
                    const double w = vk[c];
                    for (std::size_t r = 0; r < q; ++r) u[r] += centered(r, c) * w;
                }
                const double rem = deflate(result.basis, filled, u);
                if (rem > 1e-300) {
                    for (double& e : u) e /= rem;
                    result.basis.set_column(filled, u);
                    result.variances[filled] = mu / denom;
                    ++filled;
                    continue;
                }
            }
            const Vector pad = complete_column(result.basis, filled);
            result.basis.set_column(filled, pad);
            result.variances[filled] = 0.0;
            ++filled;
        }
    } else {
        Matrix cov(q, q);
        for (std::size_t i = 0; i < q; ++i) {
            for (std::size_t j = i; j < q; ++j) {
                double s = 0.0;
                for (std::size_t c = 0; c < samples; ++c) s += centered(i, c) * centered(j, c);
                cov(i, j) = cov(j, i) = s / denom;
            }
        }
        const EigenResult eig = symmetric_eig(cov);
        for (std::size_t k = 0; k < d; ++k) {
            result.basis.set_column(k, eig.eigenvectors.column(k));
            result.variances[k] = eig.eigenvalues[k];
        }
    }
    return result;
}

}  // namespace prc
