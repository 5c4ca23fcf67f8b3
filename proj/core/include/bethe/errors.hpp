#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bethe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InexactDivision : public Error {
 public:
  using Error::Error;
};

class PoleTooHigh : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class NotGeneric : public Error {
 public:
  using Error::Error;
};

class Infertile : public Error {
 public:
  using Error::Error;
};

class NotSuperFertile : public Error {
 public:
  using Error::Error;
};

class NotPolynomial : public Error {
 public:
  using Error::Error;
};

class NotTriangularNumber : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroInRecursion : public Error {
 public:
  using Error::Error;
};

class NotInKernel : public Error {
 public:
  using Error::Error;
};

class ObstructionViolated : public Error {
 public:
  using Error::Error;
};

class RecoveryFailed : public Error {
 public:
  using Error::Error;
};

class NotXk : public Error {
 public:
  using Error::Error;
};

class NotLambdaMF : public Error {
 public:
  using Error::Error;
};

/// Parse failure; `position` is the 0-based character offset.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class NonPolynomial : public Error {
 public:
  using Error::Error;
};

}  // namespace bethe
