#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace almine {

// Invalid configuration: bad thresholds, window sizes, generator budgets.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An operation was applied outside its domain (empty queue, empty window, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data. Carries the 1-based line number when known (0 = unknown).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace almine
