#pragma once

#include <stdexcept>
#include <string>

namespace polytame {

/// A precondition or mathematical obstruction inside the library
/// (non-face zero set, failed divisibility, non-representable point, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed external input (bad JSON, wrong shapes, unknown tags).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polytame
