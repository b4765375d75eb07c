#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace moodsig {

/// Operands with incompatible alphabet size, truncation order or length.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input that violates an operation's precondition (empty path, bad ratio...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A record in an input file failed validation. Carries the 1-based line
/// number and the offending field name so callers can report them.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::size_t line, std::string field, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", field '" + field +
                           "': " + what),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace moodsig
