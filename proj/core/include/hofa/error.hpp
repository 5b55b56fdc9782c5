#pragma once

#include <stdexcept>
#include <string>

namespace hofa {

/// Bad input: mismatched groups, out-of-range parameters, malformed files.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact computation would exceed a configured enumeration cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A quantity that must be real came out with a non-negligible imaginary part.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hofa
