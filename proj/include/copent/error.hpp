#pragma once

#include <stdexcept>
#include <string>

namespace copent {

/// Malformed or unusable input data (CSV syntax, shapes, column selection).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV cell that failed to parse. Row and column are 1-based file positions.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : DataError(what), row_(row), column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// The estimator is undefined on the given data (e.g. coincident points).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace copent
