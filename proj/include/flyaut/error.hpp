#ifndef FLYAUT_ERROR_HPP
#define FLYAUT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flyaut {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (terms, formulas, graph files).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An operation was applied outside its domain (bad label, overlapping
/// vertex sets, index out of range, redundant term, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A term was run on an automaton built for a different annotation width.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// A brute-force oracle refused an input beyond its enumeration budget.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace flyaut

#endif  // FLYAUT_ERROR_HPP
