#pragma once

#include <stdexcept>
#include <string>

namespace nbr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid graph data (self-loops, duplicates, out-of-range ids).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Rejected parameters: generator arguments, run configuration, caps.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An exponential backend refused an instance whose parameter exceeds its cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidCover : public Error {
 public:
  using Error::Error;
};

class InvalidDecomposition : public Error {
 public:
  using Error::Error;
};

}  // namespace nbr
