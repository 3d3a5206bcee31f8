#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nmlkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `line` and `column` are 1-based; 0 means unknown.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), detail_(message), line_(line), column_(column) {}

  /// Message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    std::string where = "line " + std::to_string(line);
    if (column != 0) where += ", column " + std::to_string(column);
    return where + ": " + message;
  }

  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// A configured cap (atom count, vertex count, width, search budget) was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// An argument violates an operation's precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace nmlkit
