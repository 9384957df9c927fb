#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nsurf {

// Syntax error while reading a triangulation file.  Line and column are
// 1-based; column points at the start of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
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

// Structurally well-formed input that violates a triangulation invariant
// (non-involutive gluing, permutation not mapping face to face, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what)
      : std::runtime_error(what) {}
};

// An oracle or verification run refused an instance that exceeds its
// built-in work limits.
class ScaleGuardError : public std::runtime_error {
 public:
  explicit ScaleGuardError(const std::string& what)
      : std::runtime_error(what) {}
};

// Cooperative timeout: a deadline expired between algorithm stages.
class TimeoutError : public std::runtime_error {
 public:
  TimeoutError() : std::runtime_error("deadline expired") {}
};

}  // namespace nsurf
