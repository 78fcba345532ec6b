#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace maxrect {

/// Bad input: malformed grids, out-of-domain parameters, mismatched shapes.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A basis enumeration visited more sets than its budget allows.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::int64_t visited, std::int64_t budget)
      : std::runtime_error("basis budget exceeded: visited " + std::to_string(visited) +
                           " sets, budget " + std::to_string(budget)),
        visited_(visited),
        budget_(budget) {}

  std::int64_t visited() const noexcept { return visited_; }
  std::int64_t budget() const noexcept { return budget_; }

 private:
  std::int64_t visited_;
  std::int64_t budget_;
};

/// An improper integral in a constant assembly does not converge.
class DivergenceError : public InputError {
 public:
  DivergenceError(std::string integral, const std::string& why)
      : InputError("integral " + integral + " diverges: " + why), integral_(std::move(integral)) {}

  const std::string& integral() const noexcept { return integral_; }

 private:
  std::string integral_;
};

}  // namespace maxrect
