#pragma once

#include <stdexcept>
#include <string>

namespace idlewage {

// Argument outside the mathematical domain of an operation (e.g. a
// non-positive pickup time handed to idle_from_time).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A value object violates one of its invariants.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed configuration input. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// The minimum-wage block constraint cannot be met.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace idlewage
