#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pbisim {

/// Malformed input: unknown ids, broken distributions, wrong machine class.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state-space expansion hit its budget before finishing.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t partial_size)
      : std::runtime_error(what), partial_size_(partial_size) {}

  /// Number of states materialised when the budget ran out.
  std::size_t partial_size() const noexcept { return partial_size_; }

 private:
  std::size_t partial_size_;
};

/// An algorithm refused to run because the instance exceeds a configured bound.
class SizeGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace pbisim

namespace pbisim {

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A game move that is not legal in the current position.
class IllegalMove : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pbisim
