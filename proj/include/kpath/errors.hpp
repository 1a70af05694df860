#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kpath {

/// Malformed input text. `line` is 1-based and refers to the offending line
/// of the stream being parsed.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Raised by the exhaustive oracles when the input exceeds their guards.
class EnumerationLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace kpath
