#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wchi {

/// Raised when an operation would exceed the configured tensor size limits.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent algebraic routes disagreed. Signals a bug, not bad input.
class ConsistencyFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numerical procedure (quadrature, series acceleration) failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invariant-violating input document (kernel, chaos, config).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Size limits for dense tensors. Every d^q-sized allocation is checked
/// against these before it happens.
struct Limits {
  int max_order = 8;
  std::size_t max_entries = 10'000'000;
};

}  // namespace wchi
