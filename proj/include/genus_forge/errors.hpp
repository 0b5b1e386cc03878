#pragma once

#include <stdexcept>
#include <string>

namespace genus_forge {

// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data violates a documented invariant (duality, divisibility,
// dimension shape, consistency between redundant fields).
class validation_error : public error {
 public:
  using error::error;
};

// Mismatched arguments that no data could repair (wrong dimension family,
// unsupported parameter range).
class dimension_error : public validation_error {
 public:
  using validation_error::validation_error;
};

class parse_error : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

// Exhaustive sweep would exceed the configured assignment budget.
class exhaustion_cap_error : public error {
 public:
  using error::error;
};

}  // namespace genus_forge
