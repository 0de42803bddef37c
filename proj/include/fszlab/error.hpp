#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fszlab {

// Precondition or argument violation (bad prime, zero inverse, mixed fields...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed the configured element budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string what_is_counted, std::string required, std::string required_decimal)
      : std::runtime_error("enumeration budget exceeded: " + what_is_counted + " needs " + required +
                           " = " + required_decimal + " elements"),
        required_(std::move(required)),
        required_decimal_(std::move(required_decimal)) {}

  // Symbolic form such as "7^16".
  const std::string& required() const noexcept { return required_; }
  const std::string& required_decimal() const noexcept { return required_decimal_; }

 private:
  std::string required_;
  std::string required_decimal_;
};

}  // namespace fszlab
