#pragma once

#include <stdexcept>
#include <string>

namespace prc {

enum class ErrorKind {
    NonSquare,
    Asymmetric,
    NotPositiveDefinite,
    DimensionMismatch,
    BadDimension,
    DegenerateLine,
    EmptyModel,
    NoClasses,
    EmptyDataset,
    ClassTooSmall,
    Io,
    Parse,
    RaggedRows,
    NonFiniteValue,
    BadSpec,
    SchemaMismatch,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the whole library; `kind()` identifies the
/// failure so callers can map errors to exit codes or assertions.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace prc
