#pragma once

#include <stdexcept>
#include <string>

namespace tripent {

// Caller passed arguments outside an operation's contract (bad axis, n = 0, empty data).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data that violates a type invariant (unnormalized PMF, zero coefficient).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mathematically undefined evaluation (sigma <= 0, lambda outside [0,1], kappa0 = 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The closed form exists only for a sub-case (sigma_v == sigma_w).
class UnsupportedCaseError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Unreadable or malformed configuration / data files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tripent
