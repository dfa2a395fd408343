#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace carforge {

// Invalid thresholds, unknown column/measure names, malformed strategy strings.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Anything wrong with the data itself.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyDatasetError : public DataError {
 public:
  EmptyDatasetError() : DataError("dataset has no instances") {}
  using DataError::DataError;
};

}  // namespace carforge
