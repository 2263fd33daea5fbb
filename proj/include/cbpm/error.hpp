#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cbpm {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance/matching dimensions disagree, or the instance is degenerate for
/// the requested operation.
class InstanceError : public Error {
 public:
  using Error::Error;
};

class InvalidMoveError : public Error {
 public:
  using Error::Error;
};

/// Structurally malformed input (bad header, bad token, wrong count).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t position)
      : Error("line " + std::to_string(line) + ", token " +
              std::to_string(position) + ": " + what),
        line_(line),
        position_(position) {}

  std::size_t line() const { return line_; }
  std::size_t position() const { return position_; }

 private:
  std::size_t line_;
  std::size_t position_;
};

/// Well-formed input that violates a semantic invariant (e.g. a vertex
/// matched twice).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration refused because the instance exceeds the cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace cbpm
