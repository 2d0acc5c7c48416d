#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace brw {

/// Malformed textual input (set expressions, law strings, snapshots).
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::invalid_argument("parse error at column " + std::to_string(column) + ": " + what),
        column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// A well-formed request outside the domain where the quantity is defined
/// (infeasible strategy, overlapping interpolation family, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine failed to converge or overflowed.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact-mode population exceeded its per-particle cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace brw
