#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thzcav {

/// Argument outside the mathematical domain of a function (x <= 0 for log_gamma, d = 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A value violates a documented invariant of a domain type.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input text. `line()` is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace thzcav
