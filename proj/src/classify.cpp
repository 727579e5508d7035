#include "prc/classify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace prc {

Prediction prc_classify(const Vector& x, const std::vector<std::vector<Vector>>& class_models,
                        const PrcConfig& config) {
    if (class_models.empty()) throw Error(ErrorKind::NoClasses, "no class models given");
    Prediction pred;
    pred.distances.reserve(class_models.size());
    pred.per_class.reserve(class_models.size());
    for (const auto& model : class_models) {
        pred.per_class.push_back(run_projection(x, model, config));
        pred.distances.push_back(pred.per_class.back().distance);
    }
    pred.label = 0;
    for (std::size_t c = 1; c < pred.distances.size(); ++c)
        if (pred.distances[c] < pred.distances[pred.label]) pred.label = c;
    return pred;
}

Prediction prc_classify(const Vector& x, const std::vector<Matrix>& class_models,
                        const PrcConfig& config) {
    std::vector<std::vector<Vector>> models;
    models.reserve(class_models.size());
    for (const Matrix& m : class_models) models.push_back(m.columns());
    return prc_classify(x, models, config);
}

double lrc_distance(const Vector& x, const Matrix& class_matrix) {
    if (class_matrix.rows() != x.size())
        throw Error(ErrorKind::DimensionMismatch, "class matrix rows differ from query dimension");
    const Vector beta = solve_least_squares(class_matrix, x);
    const Vector fit = class_matrix * beta;
    return distance(x, fit);
}

double lrc_distance(const Vector& x, const std::vector<Vector>& class_samples) {
    return lrc_distance(x, Matrix::from_columns(class_samples));
}

std::size_t nn_classify(const Vector& x, const Dataset& train) {
    if (train.total_samples() == 0) throw Error(ErrorKind::EmptyDataset, "no training samples");
    std::size_t best_class = 0;
    double best_d2 = -1.0;
    for (std::size_t c = 0; c < train.num_classes(); ++c) {
        for (const Vector& s : train.classes[c]) {
            if (s.size() != x.size())
                throw Error(ErrorKind::DimensionMismatch, "sample dimension differs from query");
            double d2 = 0.0;
            for (std::size_t r = 0; r < x.size(); ++r) {
                const double d = x[r] - s[r];
                d2 += d * d;
            }
            if (best_d2 < 0.0 || d2 < best_d2) {
                best_d2 = d2;
                best_class = c;
            }
        }
    }
    return best_class;
}

double affine_oracle_distance(const Vector& x, const std::vector<Vector>& class_samples) {
    if (class_samples.empty()) throw Error(ErrorKind::EmptyModel, "class model has no samples");
    const Vector& x1 = class_samples.front();
    if (x1.size() != x.size())
        throw Error(ErrorKind::DimensionMismatch, "sample dimension differs from query");
    if (class_samples.size() == 1) return distance(x, x1);

    // Affine hull as x1 + span{x_k - x1}; the residual of the least-squares
    // fit is the exact hull distance.
    Matrix diffs(x.size(), class_samples.size() - 1);
    for (std::size_t c = 1; c < class_samples.size(); ++c)
        for (std::size_t r = 0; r < x.size(); ++r)
            diffs(r, c - 1) = class_samples[c][r] - x1[r];
    const Vector rhs = subtract(x, x1);
    const Vector alpha = solve_least_squares(diffs, rhs);
    const Vector fit = diffs * alpha;
    return distance(rhs, fit);
}

double affine_oracle_distance(const Vector& x, const Matrix& class_samples) {
    return affine_oracle_distance(x, class_samples.columns());
}

ScatterPair compute_scatters(const Dataset& train, const PrcConfig& config) {
    if (train.num_classes() == 0) throw Error(ErrorKind::NoClasses, "empty training set");
    const std::size_t q = train.dim;
    for (std::size_t c = 0; c < train.num_classes(); ++c)
        if (train.classes[c].size() < 2)
            throw Error(ErrorKind::ClassTooSmall,
                        "class '" + train.labels[c] + "' needs at least 2 samples");

    ScatterPair out{Matrix(q, q), Matrix(q, q)};
    auto accumulate = [q](Matrix& m, const Vector& r) {
        for (std::size_t i = 0; i < q; ++i) {
            const double ri = r[i];
            for (std::size_t j = 0; j < q; ++j) m(i, j) += ri * r[j];
        }
    };

    for (std::size_t c = 0; c < train.num_classes(); ++c) {
        const auto& samples = train.classes[c];
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const Vector& x = samples[i];
            if (x.size() != q) throw Error(ErrorKind::DimensionMismatch, "inconsistent dimensions");

            std::vector<Vector> own;
            own.reserve(samples.size() - 1);
            for (std::size_t k = 0; k < samples.size(); ++k)
                if (k != i) own.push_back(samples[k]);
            const ProjectionResult within = run_projection(x, own, config);
            accumulate(out.jw, subtract(x, within.representation));

            for (std::size_t j = 0; j < train.num_classes(); ++j) {
                if (j == c) continue;
                const ProjectionResult between = run_projection(x, train.classes[j], config);
                accumulate(out.jb, subtract(x, between.representation));
            }
        }
    }

    const double inv_total = 1.0 / static_cast<double>(train.total_samples());
    for (double& v : out.jb.data()) v *= inv_total;
    for (double& v : out.jw.data()) v *= inv_total;
    return out;
}

DiscriminantProjection solve_generalized_eig(const Matrix& jb, const Matrix& jw, double epsilon,
                                             std::size_t d) {
    const std::size_t q = jb.rows();
    if (jb.cols() != q || jw.rows() != q || jw.cols() != q)
        throw Error(ErrorKind::BadDimension, "scatter matrices must be square and equal-sized");
    if (d < 1 || d > q) throw Error(ErrorKind::BadDimension, "d must be in [1, q]");

    Matrix regularized = jw;
    for (std::size_t i = 0; i < q; ++i) regularized(i, i) += epsilon;
    const Matrix l = cholesky(regularized);

    // C = L^-1 Jb L^-T is symmetric with the same eigenvalues as the
    // generalized pencil; eigenvectors back-transform through L^T.
    Matrix s(q, q);
    for (std::size_t c = 0; c < q; ++c) {
        const Vector col = solve_lower(l, jb.column(c));
        s.set_column(c, col);
    }
    Matrix cmat(q, q);
    const Matrix st = s.transposed();
    for (std::size_t c = 0; c < q; ++c) {
        const Vector col = solve_lower(l, st.column(c));
        for (std::size_t r = 0; r < q; ++r) cmat(c, r) = col[r];  // row c of C
    }
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i + 1; j < q; ++j)
            cmat(i, j) = cmat(j, i) = 0.5 * (cmat(i, j) + cmat(j, i));

    const EigenResult eig = symmetric_eig(cmat);

    DiscriminantProjection model;
    model.d = d;
    model.epsilon = epsilon;
    model.p = Matrix(q, d);
    model.eigenvalues.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
        Vector pk = solve_lower_transposed(l, eig.eigenvectors.column(k));
        const double n = norm(pk);
        if (n > 0.0)
            for (double& v : pk) v /= n;
        model.p.set_column(k, pk);
        model.eigenvalues[k] = eig.eigenvalues[k];
    }
    return model;
}

DiscriminantProjection dprc_fit(const Dataset& train, std::size_t d, const EpsilonSpec& epsilon,
                                const PrcConfig& config) {
    if (d < 1 || d > train.dim) throw Error(ErrorKind::BadDimension, "d must be in [1, q]");
    const ScatterPair scatters = compute_scatters(train, config);
    double eps = epsilon.value;
    if (epsilon.mode == EpsilonSpec::Mode::Relative)
        eps = std::max(epsilon.value * scatters.jw.trace() / static_cast<double>(train.dim), 1e-12);
    return solve_generalized_eig(scatters.jb, scatters.jw, eps, d);
}

Prediction dprc_classify(const Vector& x, const DiscriminantProjection& model,
                         const Dataset& train, const PrcConfig& config) {
    if (model.p.rows() != x.size())
        throw Error(ErrorKind::DimensionMismatch, "query dimension differs from projection rows");
    const Vector w = model.p.transposed_times(x);
    const Dataset projected = apply_projection(train, model.p);
    return prc_classify(w, projected.classes, config);
}

}  // namespace prc
