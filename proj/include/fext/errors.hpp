#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fext {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Source text does not conform to the grammar. Line and column are 1-based.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// The oracle cannot decide a query within its horizon.
class Undecidable : public Error {
public:
    using Error::Error;
};

/// Ultrafilter laws were found broken (empty accepted family, partition law).
class ConsistencyViolation : public Error {
public:
    using Error::Error;
};

class ReplayMismatch : public Error {
public:
    using Error::Error;
};

class NotSupported : public Error {
public:
    using Error::Error;
};

class MalformedIndicator : public Error {
public:
    using Error::Error;
};

class NotRepresentable : public Error {
public:
    using Error::Error;
};

}  // namespace fext
