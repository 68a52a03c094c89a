#pragma once

#include <stdexcept>
#include <string>

namespace mlcd {

/// Input is structurally valid but carries no usable signal (all-zero
/// aggregate, rank below the requested embedding dimension, empty panel).
class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, long line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
          line_(line) {}
    explicit ParseError(const std::string& msg) : std::runtime_error(msg), line_(0) {}
    long line() const { return line_; }

private:
    long line_;
};

} // namespace mlcd
