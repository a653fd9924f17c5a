#pragma once

#include <stdexcept>
#include <string>

namespace scriptdag {

/// An operation would introduce (or was handed) a directed cycle.
class CycleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Unrecoverable wire-format error, with the 1-based source position.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, int line, int column)
      : std::runtime_error(message + " (line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

/// Exact search refused because the instance is above the configured size cap.
class SizeLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace scriptdag
