#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "prc/linalg.hpp"

namespace prc {

/// Labeled feature vectors grouped by class. Class ids are dense indices
/// assigned to external labels in first-appearance order; `labels` is the
/// id -> label side of that bijection.
struct Dataset {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<Vector>> classes;

    std::size_t num_classes() const { return classes.size(); }
    std::size_t total_samples() const {
        std::size_t n = 0;
        for (const auto& c : classes) n += c.size();
        return n;
    }
};

/// Load `label,f1,...,fq` rows (no header, UTF-8, LF or CRLF). Labels are
/// opaque strings; rows are grouped by label in first-appearance order.
Dataset load_csv_dataset(const std::filesystem::path& path);

/// Per class, a seeded shuffle sends exactly `train_per_class` samples to
/// the train split and the remainder to test. Deterministic for a fixed
/// seed; throws ClassTooSmall when a class cannot leave at least one
/// sample for testing.
std::pair<Dataset, Dataset> split_dataset(const Dataset& data, std::size_t train_per_class,
                                          std::uint64_t seed);

/// Replace every sample x with P^T x (labels preserved).
Dataset apply_projection(const Dataset& data, const Matrix& p);

}  // namespace prc
