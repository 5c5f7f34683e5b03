#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

/// Malformed configuration, degenerate geometry or violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation point outside the support of a family (or a non-finite argument).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Root-finding, bracketing or quadrature did not reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orlicz
