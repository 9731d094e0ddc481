#pragma once

#include <stdexcept>
#include <string>

namespace ftstat {

// Shape mismatch between curves, grids or flattened fields.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Lag outside the admissible range for the series length.
class InvalidLagError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Bad tuning parameters (m, n, K, H, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input that defeats an estimator, e.g. constant curves in the
// block-length selector.
class DegenerateSeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file; `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ftstat
