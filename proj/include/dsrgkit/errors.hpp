#pragma once

#include <stdexcept>
#include <string>

namespace dsrgkit {

/// Malformed or out-of-range input (bad coordinates, wrong lengths, bad JSON).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a structural requirement, e.g. a map that
/// is not an order-2 automorphism. The message names a witness element.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its stated hypotheses.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap would be exceeded.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Empty or complete connection set: the parameters are not determined.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructor has no admissible choice for the given inputs.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dsrgkit
