#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pconway {

struct PolynomialParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A polynomial that cannot be the Conway polynomial of a link with the
/// stated number of components. Always an upstream bug.
struct ParityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed PD-code text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input describing an impossible diagram or pattern.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Crossing-count ceiling exceeded.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Wall-clock budget exceeded.
struct TimeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pconway
