#pragma once

#include <cstddef>
#include <vector>

#include "prc/linalg.hpp"

namespace prc {

/// Stopping knobs of the iterative projection. The defaults mirror the
/// classifier's standard settings: relative-gap threshold 0.01 and an
/// iteration budget of 100.
struct PrcConfig {
    double delta0 = 0.01;
    int max_iters = 100;
};

enum class StopReason {
    GapBelowThreshold,  // relative gap fell below delta0
    MaxItersExhausted,  // iteration budget ran out first
    ExactHit,           // distance reached zero
    SingleSample,       // one-point class model, nothing to iterate
    DegenerateModel,    // every far-point candidate coincides with the anchor
};

const char* to_string(StopReason reason);

/// Working state of one projection run: a mutable copy of the class
/// points whose columns are progressively overwritten, the index of the
/// current anchor (nearest point), and the cyclic far-point cursor.
struct ClassModel {
    std::vector<Vector> points;
    std::size_t anchor_index = 0;
    std::size_t cycle_pointer = 0;
};

struct ProjectionResult {
    Vector representation;
    double distance = 0.0;
    double initial_distance = 0.0;  // distance to the first anchor, before any projection
    int iterations_used = 0;
    StopReason stop_reason = StopReason::SingleSample;
    std::vector<double> trace;  // distance after each iteration, nonincreasing
};

/// Index of the model point nearest to x; ties go to the lowest index.
std::size_t nearest_index(const Vector& x, const ClassModel& model);
std::size_t nearest_index(const Vector& x, const std::vector<Vector>& points);

struct LineProjection {
    double t;      // position parameter along anchor -> other (unconstrained)
    Vector point;  // anchor + t * (other - anchor)
};

/// Orthogonal projection of x onto the infinite line through anchor and
/// other. Throws DegenerateLine when the endpoints coincide within
/// 1e-12 * (1 + ||anchor||).
LineProjection project_onto_line(const Vector& x, const Vector& anchor, const Vector& other);

/// Normalized change between consecutive distances:
/// |d_prev - d_curr| / (d_prev + d_curr), defined as 0 when both are zero.
double relative_gap(double d_prev, double d_curr);

/// Iteratively project x onto lines through the class model until the
/// relative distance gap stalls, the budget runs out, the distance hits
/// zero, or the model degenerates.
///
/// Each round picks the far point by cycling column indices and skipping
/// the anchor, projects x onto the line anchor->far, then overwrites the
/// far column with the projection point and makes it the new anchor.
ProjectionResult run_projection(const Vector& x, const std::vector<Vector>& class_samples,
                                const PrcConfig& config = {});
ProjectionResult run_projection(const Vector& x, const Matrix& class_samples,
                                const PrcConfig& config = {});

}  // namespace prc
