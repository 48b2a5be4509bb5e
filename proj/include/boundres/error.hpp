#pragma once

#include <stdexcept>
#include <string>

namespace boundres {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on sizes, ranges or dimensions was violated.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. `row()` is 1-based, 0 when not applicable.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row = 0)
        : Error(row ? what + " (row " + std::to_string(row) + ")" : what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// A computation produced a non-finite value or failed to converge.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace boundres
