// Error types thrown by the emergence library. All inherit from Error so
// callers can catch the whole family, and from the three mid-level bases
// (ValidationError, CapExceededError via its own type, ComputeError) that the
// CLI maps onto exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace emergence {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input data or configuration (CLI exit code 2).
struct ValidationError : Error {
    using Error::Error;
};

// Enumeration guard tripped (CLI exit code 3).
struct CapExceededError : Error {
    using Error::Error;
};

// Internal contract violated while computing (also exit code 2 at the CLI).
struct ComputeError : Error {
    using Error::Error;
};

struct NonSquareError : ValidationError {
    using ValidationError::ValidationError;
};

struct NegativeEntryError : ValidationError {
    using ValidationError::ValidationError;
};

struct RowSumError : ValidationError {
    RowSumError(std::size_t row, double deviation, const std::string& what)
        : ValidationError(what), row(row), deviation(deviation) {}
    std::size_t row;
    double deviation;
};

struct SingleStateScaleError : ComputeError {
    using ComputeError::ComputeError;
};

struct InvalidPartitionError : ValidationError {
    using ValidationError::ValidationError;
};

struct IndexOutOfRangeError : ValidationError {
    using ValidationError::ValidationError;
};

struct SizeMismatchError : ValidationError {
    using ValidationError::ValidationError;
};

struct NodeNotFoundError : ComputeError {
    using ComputeError::ComputeError;
};

struct NoPathError : ComputeError {
    using ComputeError::ComputeError;
};

struct MissingCpError : ComputeError {
    using ComputeError::ComputeError;
};

struct UndefinedDistributionError : ComputeError {
    using ComputeError::ComputeError;
};

struct InvalidConfigError : ValidationError {
    using ValidationError::ValidationError;
};

struct ParseError : ValidationError {
    using ValidationError::ValidationError;
};

} // namespace emergence
