#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <functional>

#include "prc/classify.hpp"
#include "prc/engine.hpp"
#include "prc/rng.hpp"

using namespace prc;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Io;
}

std::vector<Vector> gaussian_points(std::size_t q, std::size_t n, Rng& rng) {
    std::vector<Vector> pts(n, Vector(q));
    for (auto& p : pts)
        for (double& v : p) v = rng.next_gaussian();
    return pts;
}

}  // namespace

TEST_CASE("nearest_index picks the closest column") {
    ClassModel model;
    model.points = {{1.0, 0.0}, {0.0, 2.0}, {3.0, 3.0}};
    CHECK(nearest_index(Vector{0.0, 0.0}, model) == 0);
}

TEST_CASE("nearest_index exact match") {
    std::vector<Vector> pts{{1.0, 0.0}, {0.0, 2.0}, {3.0, 3.0}};
    CHECK(nearest_index(Vector{3.0, 3.0}, pts) == 2);
}

TEST_CASE("nearest_index breaks ties toward the lowest index") {
    std::vector<Vector> pts{{1.0, 0.0}, {-1.0, 0.0}};
    CHECK(nearest_index(Vector{0.0, 0.0}, pts) == 0);
}

TEST_CASE("project_onto_line analytic cases") {
    {
        const auto proj = project_onto_line({1.0, 1.0}, {0.0, 0.0}, {2.0, 0.0});
        CHECK(proj.t == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(proj.point[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(proj.point[1] == doctest::Approx(0.0).epsilon(1e-14));
    }
    {
        // x on the line: t falls outside [0,1], which is allowed
        const auto proj = project_onto_line({3.0, 0.0}, {0.0, 0.0}, {1.0, 0.0});
        CHECK(proj.t == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(distance(proj.point, {3.0, 0.0}) <= 1e-14);
    }
    {
        // orthogonal query lands on the anchor
        const auto proj = project_onto_line({0.0, 2.0}, {0.0, 0.0}, {1.0, 0.0});
        CHECK(proj.t == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(distance(proj.point, {0.0, 0.0}) <= 1e-14);
    }
}

TEST_CASE("project_onto_line rejects coincident endpoints") {
    CHECK(kind_of([] { project_onto_line({1.0, 1.0}, {2.0, 2.0}, {2.0, 2.0}); }) ==
          ErrorKind::DegenerateLine);
}

TEST_CASE("project_onto_line result is orthogonal and never worse than the endpoints") {
    Rng rng(67);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t q = 2 + rng.next_index(10);
        Vector x(q), a(q), b(q);
        for (double& v : x) v = rng.next_gaussian();
        for (double& v : a) v = rng.next_gaussian();
        for (double& v : b) v = rng.next_gaussian();
        const auto proj = project_onto_line(x, a, b);
        const Vector dir = subtract(b, a);
        CHECK(std::abs(dot(subtract(x, proj.point), dir)) <= 1e-8 * (1.0 + norm(x) * norm(dir)));
        CHECK(distance(x, proj.point) <= distance(x, a) + 1e-10);
        CHECK(distance(x, proj.point) <= distance(x, b) + 1e-10);
    }
}

TEST_CASE("relative_gap arithmetic") {
    CHECK(relative_gap(2.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(relative_gap(5.0, 5.0) == 0.0);
    CHECK(relative_gap(0.0, 0.0) == 0.0);
}

TEST_CASE("run_projection single-sample class") {
    const auto result = run_projection({0.0, 0.0}, std::vector<Vector>{{1.0, 1.0}});
    CHECK(result.stop_reason == StopReason::SingleSample);
    CHECK(result.distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(result.representation == Vector{1.0, 1.0});
    CHECK(result.iterations_used == 0);
    CHECK(result.trace.empty());
}

TEST_CASE("run_projection two-point line matches the affine oracle") {
    const std::vector<Vector> samples{{0.0, 0.0}, {2.0, 0.0}};
    const Vector x{1.0, 1.0};
    const auto result = run_projection(x, samples);
    CHECK(result.distance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.representation[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.representation[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(result.distance ==
          doctest::Approx(affine_oracle_distance(x, samples)).epsilon(1e-12));
}

TEST_CASE("run_projection reaches the simplex centroid") {
    const std::vector<Vector> samples{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    PrcConfig config;
    config.delta0 = 1e-10;
    const auto result = run_projection(Vector{0.0, 0.0, 0.0}, samples, config);
    CHECK(result.distance == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
    for (std::size_t r = 0; r < 3; ++r)
        CHECK(result.representation[r] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("run_projection stops immediately on an exact training-sample hit") {
    const std::vector<Vector> samples{{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}};
    const auto result = run_projection(Vector{3.0, 4.0}, samples);
    CHECK(result.stop_reason == StopReason::ExactHit);
    CHECK(result.iterations_used == 1);
    CHECK(result.trace.size() == 1);
    CHECK(result.distance == 0.0);
}

TEST_CASE("run_projection flags fully degenerate models") {
    const std::vector<Vector> samples{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
    const auto result = run_projection(Vector{0.0, 0.0}, samples);
    CHECK(result.stop_reason == StopReason::DegenerateModel);
    CHECK(result.iterations_used == 0);
    CHECK(result.distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(result.representation == Vector{1.0, 1.0});
}

TEST_CASE("run_projection skips duplicated columns but keeps iterating") {
    // One duplicate plus one informative point: the duplicate is skipped,
    // the projection still reaches the line through the distinct pair.
    const std::vector<Vector> samples{{0.0, 0.0}, {0.0, 0.0}, {2.0, 0.0}};
    const auto result = run_projection(Vector{1.0, 1.0}, samples);
    CHECK(result.distance == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run_projection input validation") {
    CHECK(kind_of([] { run_projection({1.0}, std::vector<Vector>{}); }) == ErrorKind::EmptyModel);
    CHECK(kind_of([] { run_projection({1.0}, std::vector<Vector>{{1.0, 2.0}}); }) ==
          ErrorKind::DimensionMismatch);
    CHECK(kind_of([] {
              PrcConfig bad;
              bad.max_iters = 0;
              run_projection({1.0, 1.0}, std::vector<Vector>{{1.0, 0.0}, {0.0, 1.0}}, bad);
          }) == ErrorKind::BadSpec);
}

TEST_CASE("run_projection accepts the matrix form") {
    Matrix samples(2, 2);
    samples(0, 0) = 0.0;
    samples(0, 1) = 2.0;
    const auto result = run_projection(Vector{1.0, 1.0}, samples);
    CHECK(result.distance == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trace is nonincreasing and bounded below by the affine oracle") {
    Rng rng(71);
    PrcConfig config;
    config.delta0 = 1e-8;
    config.max_iters = 200;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t q = 2 + rng.next_index(12);
        const std::size_t n = 1 + rng.next_index(8);
        const auto points = gaussian_points(q, n, rng);
        Vector x(q);
        for (double& v : x) v = rng.next_gaussian();

        const auto result = run_projection(x, points, config);
        double prev = result.initial_distance;
        for (const double d : result.trace) {
            CHECK(d <= prev + 1e-10);
            prev = d;
        }
        CHECK(result.distance >= affine_oracle_distance(x, points) - 1e-9);
        CHECK(result.iterations_used <= config.max_iters);
        CHECK(std::abs(result.distance - distance(x, result.representation)) <= 1e-12);
    }
}

TEST_CASE("run_projection is deterministic bit-for-bit") {
    Rng rng(73);
    const auto points = gaussian_points(20, 6, rng);
    Vector x(20);
    for (double& v : x) v = rng.next_gaussian();

    const auto a = run_projection(x, points);
    const auto b = run_projection(x, points);
    REQUIRE(a.trace.size() == b.trace.size());
    CHECK(std::memcmp(a.trace.data(), b.trace.data(), a.trace.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(a.representation.data(), b.representation.data(),
                      a.representation.size() * sizeof(double)) == 0);
    CHECK(a.distance == b.distance);
    CHECK(a.stop_reason == b.stop_reason);
}

TEST_CASE("budget stop fires only when nothing else stopped first") {
    Rng rng(79);
    PrcConfig config;
    config.delta0 = 0.0;  // condition 1 unreachable
    config.max_iters = 17;
    const auto points = gaussian_points(10, 5, rng);
    Vector x(10);
    for (double& v : x) v = rng.next_gaussian();
    const auto result = run_projection(x, points, config);
    CHECK(result.stop_reason == StopReason::MaxItersExhausted);
    CHECK(result.iterations_used == 17);
    CHECK(result.trace.size() == 17);
}
