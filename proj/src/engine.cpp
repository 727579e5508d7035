#include "prc/engine.hpp"

#include <cmath>
#include <string>

namespace prc {

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::GapBelowThreshold: return "GapBelowThreshold";
        case StopReason::MaxItersExhausted: return "MaxItersExhausted";
        case StopReason::ExactHit: return "ExactHit";
        case StopReason::SingleSample: return "SingleSample";
        case StopReason::DegenerateModel: return "DegenerateModel";
    }
    return "Unknown";
}

std::size_t nearest_index(const Vector& x, const std::vector<Vector>& points) {
    if (points.empty()) throw Error(ErrorKind::EmptyModel, "no points to search");
    std::size_t best = 0;
    double best_d2 = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != x.size())
            throw Error(ErrorKind::DimensionMismatch, "point dimension differs from query");
        double d2 = 0.0;
        for (std::size_t r = 0; r < x.size(); ++r) {
            const double d = x[r] - points[i][r];
            d2 += d * d;
        }
        if (best_d2 < 0.0 || d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

std::size_t nearest_index(const Vector& x, const ClassModel& model) {
    return nearest_index(x, model.points);
}

LineProjection project_onto_line(const Vector& x, const Vector& anchor, const Vector& other) {
    if (x.size() != anchor.size() || x.size() != other.size())
        throw Error(ErrorKind::DimensionMismatch, "line projection dimension mismatch");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t r = 0; r < x.size(); ++r) {
        const double dir = other[r] - anchor[r];
        num += (x[r] - anchor[r]) * dir;
        den += dir * dir;
    }
    const double tol = 1e-12 * (1.0 + norm(anchor));
    if (den <= tol * tol)
        throw Error(ErrorKind::DegenerateLine, "line endpoints coincide");
    LineProjection out;
    out.t = num / den;
    out.point.resize(x.size());
    for (std::size_t r = 0; r < x.size(); ++r)
        out.point[r] = anchor[r] + out.t * (other[r] - anchor[r]);
    return out;
}

double relative_gap(double d_prev, double d_curr) {
    const double sum = d_prev + d_curr;
    if (sum == 0.0) return 0.0;  // exact hit; the caller reports it separately
    return std::abs(d_prev - d_curr) / sum;
}

ProjectionResult run_projection(const Vector& x, const std::vector<Vector>& samples,
                                const PrcConfig& config) {
    if (samples.empty()) throw Error(ErrorKind::EmptyModel, "class model has no samples");
    if (!(config.delta0 >= 0.0) || config.max_iters < 1)
        throw Error(ErrorKind::BadSpec, "delta0 must be >= 0 and max_iters >= 1");
    const std::size_t q = x.size();
    for (const Vector& s : samples)
        if (s.size() != q)
            throw Error(ErrorKind::DimensionMismatch, "sample dimension differs from query");

    ProjectionResult result;
    const std::size_t n = samples.size();
    if (n == 1) {
        result.representation = samples.front();
        result.distance = distance(x, result.representation);
        result.initial_distance = result.distance;
        result.stop_reason = StopReason::SingleSample;
        return result;
    }

    ClassModel model;
    model.points = samples;
    model.anchor_index = nearest_index(x, model.points);
    model.cycle_pointer = 0;

    double prev = distance(x, model.points[model.anchor_index]);
    result.initial_distance = prev;
    const double exact_tol = 1e-12 * (1.0 + norm(x));
    result.trace.reserve(static_cast<std::size_t>(config.max_iters));

    // ||anchor||^2, maintained across iterations for the degeneracy test.
    double anchor_norm2 = dot(model.points[model.anchor_index], model.points[model.anchor_index]);

    bool stopped = false;
    for (int iter = 1; iter <= config.max_iters; ++iter) {
        const Vector& anchor = model.points[model.anchor_index];
        const double deg_tol = 1e-12 * (1.0 + std::sqrt(anchor_norm2));
        const double deg_tol2 = deg_tol * deg_tol;

        // Far point: next non-degenerate column in cyclic order, anchor skipped.
        std::size_t far = n;  // n = none
        double t = 0.0;
        std::size_t j = model.cycle_pointer;
        for (std::size_t tries = 0; tries < n; ++tries, j = (j + 1) % n) {
            if (j == model.anchor_index) continue;
            const Vector& cand = model.points[j];
            double num = 0.0;
            double den = 0.0;
            for (std::size_t r = 0; r < q; ++r) {
                const double dir = cand[r] - anchor[r];
                num += (x[r] - anchor[r]) * dir;
                den += dir * dir;
            }
            if (den > deg_tol2) {
                far = j;
                t = num / den;
                break;
            }
        }
        if (far == n) {
            result.stop_reason = StopReason::DegenerateModel;
            stopped = true;
            break;
        }

        // Overwrite the far column with the projection point in place; it
        // becomes the new anchor.
        Vector& target = model.points[far];
        double dist2 = 0.0;
        double p_norm2 = 0.0;
        for (std::size_t r = 0; r < q; ++r) {
            const double p = anchor[r] + t * (target[r] - anchor[r]);
            target[r] = p;
            const double d = x[r] - p;
            dist2 += d * d;
            p_norm2 += p * p;
        }
        const double curr = std::sqrt(dist2);
        model.anchor_index = far;
        model.cycle_pointer = (far + 1) % n;
        anchor_norm2 = p_norm2;

        result.trace.push_back(curr);
        result.iterations_used = iter;

        if (curr <= exact_tol) {
            result.stop_reason = StopReason::ExactHit;
            stopped = true;
            break;
        }
        if (relative_gap(prev, curr) < config.delta0) {
            result.stop_reason = StopReason::GapBelowThreshold;
            stopped = true;
            break;
        }
        prev = curr;
    }
    if (!stopped) result.stop_reason = StopReason::MaxItersExhausted;

    result.representation = model.points[model.anchor_index];
    result.distance = result.trace.empty() ? result.initial_distance : result.trace.back();
    return result;
}

ProjectionResult run_projection(const Vector& x, const Matrix& class_samples,
                                const PrcConfig& config) {
    if (class_samples.cols() == 0) throw Error(ErrorKind::EmptyModel, "class model has no samples");
    if (class_samples.rows() != x.size())
        throw Error(ErrorKind::DimensionMismatch, "sample dimension differs from query");
    return run_projection(x, class_samples.columns(), config);
}

}  // namespace prc
