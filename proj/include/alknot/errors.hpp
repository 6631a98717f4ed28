#pragma once

#include <stdexcept>

namespace alknot {

/// A series (or design) is too short for the requested operation.
class invalid_length_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A statistic degenerates: zero residual variance, zero RSS, empty path.
class degenerate_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: rank-deficient design, near-unit denominator, underflow.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace alknot
