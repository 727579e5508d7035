#pragma once

#include <filesystem>

#include "prc/classify.hpp"

namespace prc {

/// Write the projection model as structured text (JSON) with explicit
/// shape fields: format_version, q, d, epsilon, eigenvalues, P (row-major).
/// Doubles round-trip exactly.
void save_model(const DiscriminantProjection& model, const std::filesystem::path& path);

/// Inverse of save_model. Throws SchemaMismatch for missing fields, wrong
/// types or inconsistent shapes, Io for unreadable files.
DiscriminantProjection load_model(const std::filesystem::path& path);

}  // namespace prc
