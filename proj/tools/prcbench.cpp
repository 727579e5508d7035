// prcbench: train and evaluate the projection representation classifiers
// (PRC, DPRC) against LRC and nearest-neighbor baselines on CSV or
// synthetic data, and export per-iteration convergence traces.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prc/classify.hpp"
#include "prc/dataset.hpp"
#include "prc/model_io.hpp"
#include "prc/rng.hpp"
#include "prc/synth.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

// All report and trace numbers go through one formatter so output files
// are byte-identical across runs.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int exit_code_for(const prc::Error& e) {
    switch (e.kind()) {
        case prc::ErrorKind::BadSpec:
            return kExitUsage;
        case prc::ErrorKind::Io:
        case prc::ErrorKind::Parse:
        case prc::ErrorKind::RaggedRows:
        case prc::ErrorKind::NonFiniteValue:
        case prc::ErrorKind::SchemaMismatch:
        case prc::ErrorKind::EmptyDataset:
        case prc::ErrorKind::ClassTooSmall:
            return kExitData;
        default:
            return kExitNumeric;
    }
}

struct CommonArgs {
    std::string data_path;
    std::string synth_spec;
    std::uint64_t seed = 0;
    double delta0 = 0.01;
    int max_iters = 100;
    std::string out_path;
};

void add_common(CLI::App& cmd, CommonArgs& args) {
    auto* data = cmd.add_option("--data", args.data_path, "CSV dataset: label,f1,...,fq per row");
    auto* synth = cmd.add_option("--synth", args.synth_spec,
                                 "synthetic subspace data, e.g. q=20,M=5,n=10,k=3,noise=0.05,sep=5");
    data->excludes(synth);
    cmd.add_option("--seed", args.seed, "seed for every random choice in this run")
        ->capture_default_str();
    cmd.add_option("--delta0", args.delta0, "relative-gap stop threshold")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd.add_option("--max-iters", args.max_iters, "iteration budget per projection run")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--out", args.out_path, "output file path");
}

prc::Dataset load_source(const CommonArgs& args) {
    if (!args.data_path.empty()) return prc::load_csv_dataset(args.data_path);
    if (!args.synth_spec.empty())
        return prc::gen_synthetic_subspace(prc::parse_synth_spec(args.synth_spec, args.seed));
    throw prc::Error(prc::ErrorKind::BadSpec, "either --data or --synth is required");
}

prc::EpsilonSpec parse_epsilon(const std::string& text) {
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string mode = text.substr(0, colon);
        const std::string value = text.substr(colon + 1);
        try {
            if (mode == "rel") return prc::EpsilonSpec::relative(std::stod(value));
            if (mode == "abs") return prc::EpsilonSpec::absolute(std::stod(value));
        } catch (const std::exception&) {
        }
    }
    throw prc::Error(prc::ErrorKind::BadSpec, "--epsilon expects rel:<factor> or abs:<value>");
}

struct MethodResult {
    std::size_t correct = 0;
    std::size_t total = 0;
    std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
    double mean_iterations = 0.0;
    bool has_iterations = false;
    double wall_ms = 0.0;
};

double accuracy_of(const MethodResult& r) {
    return r.total == 0 ? 0.0 : static_cast<double>(r.correct) / static_cast<double>(r.total);
}

// Evaluate one decision rule over the whole test split.
template <typename Classify>
MethodResult evaluate(const prc::Dataset& test, std::size_t num_classes, Classify&& classify) {
    MethodResult result;
    result.confusion.assign(num_classes, std::vector<std::size_t>(num_classes, 0));
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t c = 0; c < test.num_classes(); ++c) {
        for (const prc::Vector& x : test.classes[c]) {
            const std::size_t predicted = classify(x);
            ++result.total;
            ++result.confusion[c][predicted];
            if (predicted == c) ++result.correct;
        }
    }
    result.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

int run_bench(const CommonArgs& common, const std::vector<std::string>& requested_methods,
              std::size_t train_per_class, std::size_t dprc_dim, const std::string& epsilon_text,
              std::size_t pca_dim) {
    std::vector<std::string> methods;
    for (const std::string& m : requested_methods) {
        if (m != "prc" && m != "dprc" && m != "lrc" && m != "nn")
            throw prc::Error(prc::ErrorKind::BadSpec, "unknown method '" + m + "'");
        if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
    }

    prc::Dataset data = load_source(common);
    if (data.num_classes() == 0) throw prc::Error(prc::ErrorKind::EmptyDataset, "no samples loaded");

    if (pca_dim > 0) {
        std::vector<prc::Vector> all;
        all.reserve(data.total_samples());
        for (const auto& cls : data.classes)
            for (const auto& x : cls) all.push_back(x);
        const prc::PcaResult pca = prc::pca_fit(prc::Matrix::from_columns(all), pca_dim);
        prc::Dataset reduced;
        reduced.dim = pca_dim;
        reduced.labels = data.labels;
        reduced.classes.resize(data.num_classes());
        for (std::size_t c = 0; c < data.num_classes(); ++c)
            for (const auto& x : data.classes[c])
                reduced.classes[c].push_back(
                    pca.basis.transposed_times(prc::subtract(x, pca.mean)));
        data = std::move(reduced);
    }

    const auto [train, test] = prc::split_dataset(data, train_per_class, common.seed);
    const prc::PrcConfig config{common.delta0, common.max_iters};
    const std::size_t m = train.num_classes();

    const prc::EpsilonSpec epsilon = parse_epsilon(epsilon_text);
    if (dprc_dim == 0) dprc_dim = std::min(train.dim, m > 0 ? m - 1 : 1);
    if (dprc_dim == 0) dprc_dim = 1;  // single-class corner

    std::map<std::string, MethodResult> results;
    std::optional<prc::DiscriminantProjection> dprc_model;
    double dprc_fit_ms = 0.0;

    for (const std::string& method : methods) {
        if (method == "prc") {
            std::size_t runs = 0;
            double iters = 0.0;
            auto r = evaluate(test, m, [&](const prc::Vector& x) {
                const prc::Prediction pred = prc::prc_classify(x, train.classes, config);
                for (const auto& pcr : pred.per_class) iters += pcr.iterations_used;
                runs += pred.per_class.size();
                return pred.label;
            });
            r.mean_iterations = runs > 0 ? iters / static_cast<double>(runs) : 0.0;
            r.has_iterations = true;
            results[method] = std::move(r);
        } else if (method == "dprc") {
            const auto fit_start = std::chrono::steady_clock::now();
            dprc_model = prc::dprc_fit(train, dprc_dim, epsilon, config);
            dprc_fit_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - fit_start)
                              .count();
            const prc::Dataset projected_train = prc::apply_projection(train, dprc_model->p);
            std::size_t runs = 0;
            double iters = 0.0;
            auto r = evaluate(test, m, [&](const prc::Vector& x) {
                const prc::Vector w = dprc_model->p.transposed_times(x);
                const prc::Prediction pred = prc::prc_classify(w, projected_train.classes, config);
                for (const auto& pcr : pred.per_class) iters += pcr.iterations_used;
                runs += pred.per_class.size();
                return pred.label;
            });
            r.mean_iterations = runs > 0 ? iters / static_cast<double>(runs) : 0.0;
            r.has_iterations = true;
            r.wall_ms += dprc_fit_ms;
            results[method] = std::move(r);
        } else if (method == "lrc") {
            std::vector<prc::Matrix> class_matrices;
            class_matrices.reserve(m);
            for (const auto& cls : train.classes)
                class_matrices.push_back(prc::Matrix::from_columns(cls));
            results[method] = evaluate(test, m, [&](const prc::Vector& x) {
                std::size_t best = 0;
                double best_d = -1.0;
                for (std::size_t c = 0; c < m; ++c) {
                    const double d = prc::lrc_distance(x, class_matrices[c]);
                    if (best_d < 0.0 || d < best_d) {
                        best_d = d;
                        best = c;
                    }
                }
                return best;
            });
        } else {  // nn
            results[method] =
                evaluate(test, m, [&](const prc::Vector& x) { return prc::nn_classify(x, train); });
        }
    }

    // Report: deterministic fields only; wall time goes to stdout.
    nlohmann::ordered_json report;
    report["config"] = {
        {"delta0", common.delta0},
        {"max_iters", common.max_iters},
        {"dprc_dim", dprc_dim},
        {"epsilon", epsilon_text},
        {"seed", common.seed},
        {"train_per_class", train_per_class},
        {"pca_dim", pca_dim},
        {"methods", methods},
        {"source", !common.data_path.empty() ? "csv:" + common.data_path
                                             : "synth:" + common.synth_spec},
    };
    if (dprc_model) report["config"]["epsilon_resolved"] = dprc_model->epsilon;
    report["data"] = {
        {"dim", data.dim},
        {"classes", data.num_classes()},
        {"labels", data.labels},
        {"train_samples", train.total_samples()},
        {"test_samples", test.total_samples()},
    };
    report["results"] = nlohmann::ordered_json::object();
    for (const std::string& name : methods) {
        const MethodResult& r = results.at(name);
        nlohmann::ordered_json entry = {
            {"accuracy", accuracy_of(r)},
            {"correct", r.correct},
            {"total", r.total},
            {"confusion", r.confusion},
        };
        if (r.has_iterations) entry["mean_iterations"] = r.mean_iterations;
        report["results"][name] = std::move(entry);
    }

    if (!common.out_path.empty()) {
        std::ofstream out(common.out_path, std::ios::binary);
        if (!out) throw prc::Error(prc::ErrorKind::Io, "cannot open " + common.out_path);
        out << report.dump(2) << '\n';
        if (!out) throw prc::Error(prc::ErrorKind::Io, "write failure on " + common.out_path);
    }

    std::cout << "dataset: dim=" << data.dim << " classes=" << data.num_classes()
              << " train=" << train.total_samples() << " test=" << test.total_samples() << '\n';
    std::cout << "config: delta0=" << fmt(common.delta0) << " max_iters=" << common.max_iters
              << " seed=" << common.seed << " train_per_class=" << train_per_class
              << " dprc_dim=" << dprc_dim << " epsilon=" << epsilon_text << '\n';
    std::cout << std::left << std::setw(8) << "method" << std::right << std::setw(10) << "accuracy"
              << std::setw(12) << "correct" << std::setw(14) << "mean-iters" << std::setw(12)
              << "time-ms" << '\n';
    for (const std::string& name : methods) {
        const MethodResult& r = results.at(name);
        std::cout << std::left << std::setw(8) << name << std::right << std::setw(10) << std::fixed
                  << std::setprecision(4) << accuracy_of(r) << std::setw(7) << r.correct << "/"
                  << std::left << std::setw(4) << r.total << std::right;
        if (r.has_iterations)
            std::cout << std::setw(14) << std::setprecision(2) << r.mean_iterations;
        else
            std::cout << std::setw(14) << "-";
        std::cout << std::setw(12) << std::setprecision(2) << r.wall_ms << '\n';
        std::cout.unsetf(std::ios::fixed);
        std::cout << std::setprecision(6);
    }
    return 0;
}

int run_trace(const CommonArgs& common, std::size_t class_id, const std::string& query_mode) {
    const prc::Dataset data = load_source(common);
    if (class_id >= data.num_classes())
        throw prc::Error(prc::ErrorKind::BadSpec,
                         "class id " + std::to_string(class_id) + " out of range");

    prc::Rng rng = prc::Rng(common.seed).stream(0x7261636bULL);  // trace-local stream
    std::vector<prc::Vector> model = data.classes[class_id];
    prc::Vector query;
    if (query_mode == "random") {
        query.resize(data.dim);
        for (double& v : query) v = rng.next_gaussian();
    } else if (query_mode == "heldout") {
        if (model.size() < 2)
            throw prc::Error(prc::ErrorKind::ClassTooSmall,
                             "held-out query needs at least 2 samples in the class");
        const std::size_t pick = rng.next_index(model.size());
        query = model[pick];
        model.erase(model.begin() + static_cast<std::ptrdiff_t>(pick));
    } else {
        throw prc::Error(prc::ErrorKind::BadSpec, "--query must be 'heldout' or 'random'");
    }

    const prc::PrcConfig config{common.delta0, common.max_iters};
    const prc::ProjectionResult result = prc::run_projection(query, model, config);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!common.out_path.empty()) {
        file.open(common.out_path, std::ios::binary);
        if (!file) throw prc::Error(prc::ErrorKind::Io, "cannot open " + common.out_path);
        out = &file;
    }
    *out << "iteration,distance,delta\n";
    double prev = result.initial_distance;
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        const double d = result.trace[i];
        *out << (i + 1) << ',' << fmt(d) << ',' << fmt(prc::relative_gap(prev, d)) << '\n';
        prev = d;
    }
    if (!common.out_path.empty() && !file)
        throw prc::Error(prc::ErrorKind::Io, "write failure on " + common.out_path);

    std::cerr << "stop: " << prc::to_string(result.stop_reason) << " after "
              << result.iterations_used << " iterations, distance " << fmt(result.distance)
              << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"projection representation classifier benchmark"};
    app.require_subcommand(1);

    CommonArgs bench_args;
    std::vector<std::string> methods{"prc", "dprc", "lrc", "nn"};
    std::size_t train_per_class = 5;
    std::size_t dprc_dim = 0;
    std::string epsilon_text = "rel:0.0001";
    std::size_t pca_dim = 0;

    CLI::App* bench = app.add_subcommand("bench", "train and evaluate classifiers on one split");
    add_common(*bench, bench_args);
    bench->add_option("--methods", methods, "subset of prc,dprc,lrc,nn")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--train-per-class", train_per_class, "training samples drawn per class")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--dprc-dim", dprc_dim, "discriminant dimension d (0 = min(q, M-1))")
        ->capture_default_str();
    bench->add_option("--epsilon", epsilon_text, "regularizer: rel:<factor> or abs:<value>")
        ->capture_default_str();
    bench->add_option("--pca-dim", pca_dim, "PCA-reduce features first (0 = off)")
        ->capture_default_str();

    CommonArgs trace_args;
    std::size_t class_id = 0;
    std::string query_mode = "heldout";
    CLI::App* trace = app.add_subcommand("trace", "export one projection run as iteration,distance,delta CSV");
    add_common(*trace, trace_args);
    trace->add_option("--class-id", class_id, "class to project onto")->capture_default_str();
    trace->add_option("--query", query_mode, "query source: heldout or random")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (bench->parsed())
            return run_bench(bench_args, methods, train_per_class, dprc_dim, epsilon_text, pca_dim);
        return run_trace(trace_args, class_id, query_mode);
    } catch (const prc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
