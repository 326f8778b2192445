#pragma once

#include <stdexcept>
#include <string>

namespace lsg {

/// Malformed input, violated precondition, or a broken internal invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed a configured size limit (dimension cap,
/// enumeration budget).
class FeasibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lsg
