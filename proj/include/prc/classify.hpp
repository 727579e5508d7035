#pragma once

#include <vector>

#include "prc/dataset.hpp"
#include "prc/engine.hpp"

namespace prc {

struct Prediction {
    std::size_t label = 0;                  // argmin of distances, ties to lowest class id
    std::vector<double> distances;          // one per class
    std::vector<ProjectionResult> per_class;
};

/// Run the projection engine against every class model and pick the class
/// whose representation lands nearest to x.
Prediction prc_classify(const Vector& x, const std::vector<std::vector<Vector>>& class_models,
                        const PrcConfig& config = {});
Prediction prc_classify(const Vector& x, const std::vector<Matrix>& class_models,
                        const PrcConfig& config = {});

/// Least-squares baseline: distance from x to the linear span (not the
/// affine hull) of the class columns.
double lrc_distance(const Vector& x, const Matrix& class_matrix);
double lrc_distance(const Vector& x, const std::vector<Vector>& class_samples);

/// Label of the globally nearest training sample; ties go to the lowest
/// class id, then the lowest sample index.
std::size_t nn_classify(const Vector& x, const Dataset& train);

/// Exact distance from x to the affine hull of the columns, computed by a
/// direct least-squares solve. Brute-force referent for the iterative
/// engine's approximation.
double affine_oracle_distance(const Vector& x, const std::vector<Vector>& class_samples);
double affine_oracle_distance(const Vector& x, const Matrix& class_samples);

/// Between-/within-class reconstruction scatter matrices: sums of outer
/// products of residuals between each training sample and its projection
/// representation on the other classes (Jb) and on its own class without
/// itself (Jw), both normalized by the total sample count.
struct ScatterPair {
    Matrix jb;
    Matrix jw;
};

ScatterPair compute_scatters(const Dataset& train, const PrcConfig& config = {});

struct DiscriminantProjection {
    Matrix p;            // q x d, unit-norm columns
    Vector eigenvalues;  // descending, one per column
    double epsilon = 0.0;
    std::size_t d = 0;
};

/// Top-d eigenpairs of Jb p = lambda (Jw + eps I) p, via Cholesky reduction
/// to an ordinary symmetric problem. Columns are rescaled to unit norm.
DiscriminantProjection solve_generalized_eig(const Matrix& jb, const Matrix& jw, double epsilon,
                                             std::size_t d);

struct EpsilonSpec {
    enum class Mode { Relative, Absolute };
    Mode mode = Mode::Relative;
    double value = 1e-4;  // factor f in relative mode, eps itself in absolute

    static EpsilonSpec relative(double factor) { return {Mode::Relative, factor}; }
    static EpsilonSpec absolute(double eps) { return {Mode::Absolute, eps}; }
};

/// Fit the discriminant projection: reconstruction scatters, then the
/// regularized generalized eigenproblem. In relative mode the regularizer
/// is f * trace(Jw) / q, floored at 1e-12.
DiscriminantProjection dprc_fit(const Dataset& train, std::size_t d,
                                const EpsilonSpec& epsilon = {}, const PrcConfig& config = {});

/// Classify in the learned space: w = P^T x against the projected training
/// set.
Prediction dprc_classify(const Vector& x, const DiscriminantProjection& model,
                         const Dataset& train, const PrcConfig& config = {});

}  // namespace prc
