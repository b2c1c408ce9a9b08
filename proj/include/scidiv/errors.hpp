#pragma once

#include <stdexcept>
#include <string>

namespace scidiv {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data. `line` is 1-based when the error refers to a text file.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& message, long line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    long line() const noexcept { return line_; }

private:
    long line_ = 0;
};

// An identifier that must be unique appeared twice.
class DuplicateError : public Error {
public:
    using Error::Error;
};

// Unknown article, author or journal identifier.
class LookupError : public Error {
public:
    using Error::Error;
};

// Empty input where a non-empty one is required, or a parameter out of range.
class DomainError : public Error {
public:
    using Error::Error;
};

// Binary operation on matrices whose journal lists differ.
class ShapeError : public Error {
public:
    using Error::Error;
};

}  // namespace scidiv
