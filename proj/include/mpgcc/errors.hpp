#pragma once

#include <stdexcept>
#include <string>

namespace mpgcc {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimensions of a point, matrix or index do not match the owning model.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error("shape error: " + what) {}
};

/// An input lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain error: " + what) {}
};

/// An exhaustive enumeration would exceed its configured budget.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error("budget exceeded: " + what) {}
};

/// The model itself is broken: infeasible or unbounded block LPs.
class ModelError : public Error {
 public:
  explicit ModelError(const std::string& what) : Error("model error: " + what) {}
};

/// No complementary tuple exists on the vertex lattice.
class LatticeInfeasibleError : public Error {
 public:
  explicit LatticeInfeasibleError(const std::string& what)
      : Error("lattice infeasible: " + what) {}
};

/// A serialized document violates the schema.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

}  // namespace mpgcc
