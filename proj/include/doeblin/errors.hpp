#pragma once

#include <stdexcept>
#include <string>

namespace doeblin {

/// Bad parameters or malformed spec strings.
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its contract (wrong model, wrong coupling, arity mismatch).
struct UsageError : std::logic_error {
  using std::logic_error::logic_error;
};

/// A memory or iteration budget was exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace doeblin
