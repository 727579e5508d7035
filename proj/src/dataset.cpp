#include "prc/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "prc/rng.hpp"

namespace prc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

}  // namespace

Dataset load_csv_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::Io, "read failure on " + path.string());
    const std::string text = buffer.str();

    Dataset data;
    std::size_t columns = 0;
    std::size_t row_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string_view line(text.data() + pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) {
            if (pos > text.size()) break;
            continue;  // blank lines are ignored
        }
        ++row_number;

        const auto fields = split_fields(line);
        if (fields.size() < 2)
            throw Error(ErrorKind::RaggedRows,
                        "row " + std::to_string(row_number) + " has fewer than 2 columns");
        if (columns == 0) {
            columns = fields.size();
            data.dim = columns - 1;
        } else if (fields.size() != columns) {
            throw Error(ErrorKind::RaggedRows,
                        "row " + std::to_string(row_number) + " has " +
                            std::to_string(fields.size()) + " columns, expected " +
                            std::to_string(columns));
        }

        const std::string label(fields[0]);
        std::size_t class_id = data.labels.size();
        for (std::size_t i = 0; i < data.labels.size(); ++i) {
            if (data.labels[i] == label) {
                class_id = i;
                break;
            }
        }
        if (class_id == data.labels.size()) {
            data.labels.push_back(label);
            data.classes.emplace_back();
        }

        Vector sample(data.dim);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            const std::string_view f = fields[c];
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
            if (ec != std::errc{} || ptr != f.data() + f.size())
                throw Error(ErrorKind::Parse, "row " + std::to_string(row_number) + ", column " +
                                                  std::to_string(c + 1) + ": '" + std::string(f) +
                                                  "' is not a number");
            if (!std::isfinite(value))
                throw Error(ErrorKind::NonFiniteValue, "row " + std::to_string(row_number) +
                                                           ", column " + std::to_string(c + 1) +
                                                           ": non-finite value");
            sample[c - 1] = value;
        }
        data.classes[class_id].push_back(std::move(sample));
        if (pos > text.size()) break;
    }
    return data;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& data, std::size_t train_per_class,
                                          std::uint64_t seed) {
    if (train_per_class < 1)
        throw Error(ErrorKind::ClassTooSmall, "train_per_class must be at least 1");
    for (std::size_t c = 0; c < data.num_classes(); ++c) {
        if (data.classes[c].size() < train_per_class + 1)
            throw Error(ErrorKind::ClassTooSmall,
                        "class '" + data.labels[c] + "' has " +
                            std::to_string(data.classes[c].size()) + " samples, needs at least " +
                            std::to_string(train_per_class + 1));
    }

    Rng base(seed);
    Dataset train;
    Dataset test;
    train.dim = test.dim = data.dim;
    train.labels = test.labels = data.labels;
    train.classes.resize(data.num_classes());
    test.classes.resize(data.num_classes());
    for (std::size_t c = 0; c < data.num_classes(); ++c) {
        const auto& samples = data.classes[c];
        std::vector<std::size_t> order(samples.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        Rng stream = base.stream(c);
        stream.shuffle(order);
        for (std::size_t i = 0; i < order.size(); ++i) {
            auto& dest = i < train_per_class ? train.classes[c] : test.classes[c];
            dest.push_back(samples[order[i]]);
        }
    }
    return {std::move(train), std::move(test)};
}

Dataset apply_projection(const Dataset& data, const Matrix& p) {
    if (p.rows() != data.dim)
        throw Error(ErrorKind::DimensionMismatch, "projection rows differ from dataset dimension");
    Dataset out;
    out.dim = p.cols();
    out.labels = data.labels;
    out.classes.resize(data.num_classes());
    for (std::size_t c = 0; c < data.num_classes(); ++c) {
        out.classes[c].reserve(data.classes[c].size());
        for (const Vector& x : data.classes[c]) out.classes[c].push_back(p.transposed_times(x));
    }
    return out;
}

}  // namespace prc
