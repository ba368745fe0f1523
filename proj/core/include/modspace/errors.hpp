#pragma once

#include <stdexcept>
#include <string>

namespace modspace {

/// Caller supplied inconsistent arguments (dimension mismatch, bad parameter).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A coordinate left the finite reals.
class NonFiniteError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative procedure failed to produce a finite answer.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The functional vanished on a nonzero vector.
class InvalidModularError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotApplicableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Results that contradict a stated hypothesis (e.g. a false contraction claim).
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundedOrbitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modspace
