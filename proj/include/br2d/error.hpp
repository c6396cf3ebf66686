#pragma once

#include <stdexcept>
#include <string>

namespace br2d {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Kernel evaluated on its logarithmic diagonal p == q.
class DiagonalError : public DomainError {
 public:
  explicit DiagonalError(const std::string& what) : DomainError(what) {}
};

/// An adaptive integration exhausted its budget without meeting tolerance.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative method (series, eigensolver) failed to converge.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Caller-supplied configuration violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace br2d
