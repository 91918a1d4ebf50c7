#pragma once

#include <stdexcept>
#include <string>

namespace hierspec {

/// A precondition of an operation was violated (bad parameters, out-of-domain
/// arguments, size caps). Maps to CLI exit code 1.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not certify its result within budget
/// (series tails, quadrature, eigensolver convergence). Maps to exit code 2.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hierspec
