#include "prc/model_io.hpp"

#include <fstream>

#include <json.hpp>

namespace prc {

void save_model(const DiscriminantProjection& model, const std::filesystem::path& path) {
    nlohmann::ordered_json doc;
    doc["format_version"] = 1;
    doc["q"] = model.p.rows();
    doc["d"] = model.d;
    doc["epsilon"] = model.epsilon;
    doc["eigenvalues"] = model.eigenvalues;
    doc["P"] = model.p.data();  // row-major, q*d entries

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw Error(ErrorKind::Io, "write failure on " + path.string());
}

DiscriminantProjection load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SchemaMismatch, std::string("not a valid model file: ") + e.what());
    }

    try {
        if (doc.at("format_version").get<int>() != 1)
            throw Error(ErrorKind::SchemaMismatch, "unsupported format_version");
        const auto q = doc.at("q").get<std::size_t>();
        const auto d = doc.at("d").get<std::size_t>();
        const auto epsilon = doc.at("epsilon").get<double>();
        const auto eigenvalues = doc.at("eigenvalues").get<std::vector<double>>();
        const auto entries = doc.at("P").get<std::vector<double>>();
        if (eigenvalues.size() != d)
            throw Error(ErrorKind::SchemaMismatch, "eigenvalue count differs from d");
        if (entries.size() != q * d)
            throw Error(ErrorKind::SchemaMismatch, "P entry count differs from q*d");

        DiscriminantProjection model;
        model.d = d;
        model.epsilon = epsilon;
        model.eigenvalues = eigenvalues;
        model.p = Matrix(q, d);
        model.p.data() = entries;
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SchemaMismatch, std::string("bad model schema: ") + e.what());
    }
}

}  // namespace prc
