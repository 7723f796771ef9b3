/**
 * @file errors.hpp
 * @brief Error taxonomy shared by the library and the CLI.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geomfit {

enum class ErrorCode {
    EmptyInput,
    TooFewPoints,
    DegenerateCloud,
    DegenerateSystem,
    DegenerateInput,
    ParseError,
    InvalidOptions,
    InvalidSpec,
    InternalError,
};

/// Stable machine-readable name, e.g. "degenerate-cloud".
const char* error_code_name(ErrorCode code);

/// Process exit code for the CLI: 2 for input errors, 3 for degenerate data.
int error_exit_code(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    const char* code_name() const noexcept { return error_code_name(code_); }

private:
    ErrorCode code_;
};

/// Input parsing failure with 1-based row/column location.
class ParseError : public Error {
public:
    ParseError(std::size_t row, std::size_t column, const std::string& reason)
        : Error(ErrorCode::ParseError,
                "row " + std::to_string(row) + ", column " + std::to_string(column) +
                    ": " + reason),
          row_(row), column_(column), reason_(reason) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t row_;
    std::size_t column_;
    std::string reason_;
};

} // namespace geomfit
