#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ammlab {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejected input: out-of-range parameter, malformed operation, bad CLI usage.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed text input (CSV, JSON, wire payloads).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Transport failure or missing replay fixture.
class NetworkError : public Error {
public:
    using Error::Error;
};

/// Pool with a zero reserve where a tradable pool is required.
class DegeneratePoolError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Too few samples (or zero variance) for a statistic to be defined.
class InsufficientDataError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An operation sequence aborted at `index`; message carries the cause.
class SequenceError : public ValidationError {
public:
    SequenceError(std::size_t index, const std::string& cause)
        : ValidationError("operation " + std::to_string(index) + ": " + cause),
          index_(index) {}

    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

}  // namespace ammlab
