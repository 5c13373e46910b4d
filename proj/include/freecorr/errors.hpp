#pragma once

#include <stdexcept>

namespace freecorr {

// Bad input or violated precondition. The CLI maps it to exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure did not converge. The CLI maps it to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace freecorr
