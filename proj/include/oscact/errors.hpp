#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oscact {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument violated a precondition (tolerance <= 0, omega <= 0, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A function evaluation produced a non-finite value, or a point lies
/// outside a validated domain. Carries the offending abscissa.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double where) : Error(what), where_(where) {}
  double where() const noexcept { return where_; }

 private:
  double where_ = 0.0;
};

/// Evaluation at a pole: x = 0 for the Planck/thermal actions, u = 0 for
/// the expm1 ratio, I0(x) + lambda = 0 for a Darboux family.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double where) : Error(what), where_(where) {}
  double where() const noexcept { return where_; }

 private:
  double where_ = 0.0;
};

/// Evaluation at a zero of a zero mode. Distinct from SingularityError so
/// callers can tell a node of w from a pole of the action it induces.
class NodeError : public Error {
 public:
  NodeError(const std::string& what, double where) : Error(what), where_(where) {}
  double where() const noexcept { return where_; }

 private:
  double where_ = 0.0;
};

/// The requested closed form is not available for this family.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// The entropy normalization limit did not converge at the probe points.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// The supplied grid cannot resolve the requested feature (e.g. kink
/// plateaus on a grid that does not reach the asymptotic regions).
class InsufficientDomainError : public Error {
 public:
  using Error::Error;
};

/// Lambda/domain validation failed. Carries the bracketing intervals of
/// every detected zero of I0(x) + lambda.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::pair<double, double>> brackets)
      : Error(what), brackets_(std::move(brackets)) {}
  const std::vector<std::pair<double, double>>& brackets() const noexcept { return brackets_; }

 private:
  std::vector<std::pair<double, double>> brackets_;
};

}  // namespace oscact
