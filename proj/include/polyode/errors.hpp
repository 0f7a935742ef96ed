#pragma once

#include <stdexcept>
#include <string>

namespace polyode {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivideByZero : public Error {
 public:
  DivideByZero() : Error("division by zero") {}
};

class NotDivisible : public Error {
 public:
  NotDivisible() : Error("polynomial division leaves a nonzero remainder") {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation's documented precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
 public:
  ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};

class NotIsolating : public Error {
 public:
  NotIsolating() : Error("interval does not isolate exactly one real root") {}
};

class NotSecondOrder : public Error {
 public:
  NotSecondOrder() : Error("the y'' coefficient is identically zero") {}
};

class NoNullspace : public Error {
 public:
  NoNullspace() : Error("criterion matrix is nonsingular; no polynomial solution") {}
};

class DegenerateDenominator : public Error {
 public:
  DegenerateDenominator()
      : Error("recurrence denominator vanishes; use the nullspace construction") {}
};

class FuchsianViolation : public Error {
 public:
  explicit FuchsianViolation(std::string residual)
      : Error("Fuchsian condition 1+alpha+beta = gamma+delta+epsilon violated; residual " +
              residual),
        residual_(std::move(residual)) {}

  const std::string& residual() const noexcept { return residual_; }

 private:
  std::string residual_;
};

class BadDegree : public Error {
 public:
  using Error::Error;
};

class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

}  // namespace polyode
