// Python bindings for the projection representation classifiers. Class
// models and datasets cross the boundary as lists of samples (one inner
// list per point); matrices as nested row lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prc/classify.hpp"
#include "prc/dataset.hpp"
#include "prc/model_io.hpp"
#include "prc/synth.hpp"

namespace py = pybind11;
using namespace prc;

namespace {

Matrix matrix_from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) throw Error(ErrorKind::BadDimension, "empty matrix");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols())
            throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

std::vector<Vector> matrix_rows(const Matrix& m) {
    std::vector<Vector> rows(m.rows(), Vector(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
    return rows;
}

EpsilonSpec epsilon_from(const std::pair<std::string, double>& spec) {
    if (spec.first == "rel") return EpsilonSpec::relative(spec.second);
    if (spec.first == "abs") return EpsilonSpec::absolute(spec.second);
    throw Error(ErrorKind::BadSpec, "epsilon mode must be 'rel' or 'abs'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Iterative line-projection classifiers (PRC/DPRC) with baselines";

    py::register_exception<Error>(m, "PrcError");

    py::class_<PrcConfig>(m, "PrcConfig")
        .def(py::init([](double delta0, int max_iters) {
                 return PrcConfig{delta0, max_iters};
             }),
             py::arg("delta0") = 0.01, py::arg("max_iters") = 100)
        .def_readwrite("delta0", &PrcConfig::delta0)
        .def_readwrite("max_iters", &PrcConfig::max_iters);

    py::enum_<StopReason>(m, "StopReason")
        .value("GapBelowThreshold", StopReason::GapBelowThreshold)
        .value("MaxItersExhausted", StopReason::MaxItersExhausted)
        .value("ExactHit", StopReason::ExactHit)
        .value("SingleSample", StopReason::SingleSample)
        .value("DegenerateModel", StopReason::DegenerateModel);

    py::class_<ProjectionResult>(m, "ProjectionResult")
        .def_readonly("representation", &ProjectionResult::representation)
        .def_readonly("distance", &ProjectionResult::distance)
        .def_readonly("initial_distance", &ProjectionResult::initial_distance)
        .def_readonly("iterations_used", &ProjectionResult::iterations_used)
        .def_readonly("stop_reason", &ProjectionResult::stop_reason)
        .def_readonly("trace", &ProjectionResult::trace)
        .def("__repr__", [](const ProjectionResult& r) {
            return "<ProjectionResult distance=" + std::to_string(r.distance) + " iterations=" +
                   std::to_string(r.iterations_used) + " stop=" + to_string(r.stop_reason) + ">";
        });

    py::class_<Prediction>(m, "Prediction")
        .def_readonly("label", &Prediction::label)
        .def_readonly("distances", &Prediction::distances)
        .def_readonly("per_class", &Prediction::per_class);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("dim", &Dataset::dim)
        .def_readwrite("labels", &Dataset::labels)
        .def_readwrite("classes", &Dataset::classes)
        .def_property_readonly("num_classes", &Dataset::num_classes)
        .def_property_readonly("total_samples", &Dataset::total_samples);

    py::class_<DiscriminantProjection>(m, "DiscriminantProjection")
        .def_property_readonly("P", [](const DiscriminantProjection& d) { return matrix_rows(d.p); })
        .def_readonly("eigenvalues", &DiscriminantProjection::eigenvalues)
        .def_readonly("epsilon", &DiscriminantProjection::epsilon)
        .def_readonly("d", &DiscriminantProjection::d);

    m.def(
        "run_projection",
        [](const Vector& x, const std::vector<Vector>& points, const PrcConfig& config) {
            return run_projection(x, points, config);
        },
        py::arg("x"), py::arg("class_points"), py::arg("config") = PrcConfig{},
        "Iteratively project x onto lines through the class points.");

    m.def(
        "prc_classify",
        [](const Vector& x, const std::vector<std::vector<Vector>>& classes,
           const PrcConfig& config) { return prc_classify(x, classes, config); },
        py::arg("x"), py::arg("class_points"), py::arg("config") = PrcConfig{});

    m.def(
        "lrc_distance",
        [](const Vector& x, const std::vector<Vector>& points) { return lrc_distance(x, points); },
        py::arg("x"), py::arg("class_points"));

    m.def("nn_classify", &nn_classify, py::arg("x"), py::arg("train"));

    m.def(
        "affine_oracle_distance",
        [](const Vector& x, const std::vector<Vector>& points) {
            return affine_oracle_distance(x, points);
        },
        py::arg("x"), py::arg("class_points"),
        "Exact distance from x to the affine hull of the points.");

    m.def(
        "dprc_fit",
        [](const Dataset& train, std::size_t d, const std::pair<std::string, double>& epsilon,
           const PrcConfig& config) { return dprc_fit(train, d, epsilon_from(epsilon), config); },
        py::arg("train"), py::arg("d"),
        py::arg("epsilon") = std::pair<std::string, double>{"rel", 1e-4},
        py::arg("config") = PrcConfig{});

    m.def("dprc_classify", &dprc_classify, py::arg("x"), py::arg("model"), py::arg("train"),
          py::arg("config") = PrcConfig{});

    m.def(
        "pca_fit",
        [](const std::vector<Vector>& points, std::size_t d) {
            const PcaResult pca = pca_fit(Matrix::from_columns(points), d);
            return py::make_tuple(pca.mean, matrix_rows(pca.basis), pca.variances);
        },
        py::arg("points"), py::arg("d"),
        "Returns (mean, basis_rows, variances); points are column samples.");

    m.def(
        "gen_synthetic_subspace",
        [](std::size_t q, std::size_t classes, std::size_t per_class, std::size_t subspace_dim,
           double noise, double separation, std::uint64_t seed) {
            SynthSpec spec;
            spec.dim = q;
            spec.num_classes = classes;
            spec.samples_per_class = per_class;
            spec.subspace_dim = subspace_dim;
            spec.noise_sigma = noise;
            spec.separation = separation;
            spec.seed = seed;
            return gen_synthetic_subspace(spec);
        },
        py::arg("q"), py::arg("classes"), py::arg("per_class"), py::arg("subspace_dim"),
        py::arg("noise") = 0.0, py::arg("separation") = 1.0, py::arg("seed") = 0);

    m.def("split_dataset", &split_dataset, py::arg("data"), py::arg("train_per_class"),
          py::arg("seed"));

    m.def(
        "apply_projection",
        [](const Dataset& data, const std::vector<Vector>& p_rows) {
            return apply_projection(data, matrix_from_rows(p_rows));
        },
        py::arg("data"), py::arg("p_rows"));

    m.def(
        "load_csv_dataset",
        [](const std::string& path) { return load_csv_dataset(path); }, py::arg("path"));

    m.def(
        "save_model",
        [](const DiscriminantProjection& model, const std::string& path) {
            save_model(model, path);
        },
        py::arg("model"), py::arg("path"));

    m.def(
        "load_model", [](const std::string& path) { return load_model(path); }, py::arg("path"));

#ifdef PRC_VERSION
    m.attr("__version__") = PRC_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
