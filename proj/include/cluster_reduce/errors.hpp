#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cluster_reduce {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NotSkewSymmetric : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A denominator vanished while evaluating at a point.
class ZeroDenominator : public Error {
 public:
  explicit ZeroDenominator(const std::string& what, std::size_t step = 0)
      : Error(what), step_(step) {}
  /// Orbit step at which the failure happened (0 outside iteration).
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class InvalidCertificate : public Error {
 public:
  using Error::Error;
};

/// The function is not constant along the fibres of a submersion.
class NotFiberConstant : public Error {
 public:
  using Error::Error;
};

class NotReducible : public Error {
 public:
  using Error::Error;
};

class NotAChain : public Error {
 public:
  NotAChain(const std::string& what, std::size_t first, std::size_t second)
      : Error(what), first_(first), second_(second) {}
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace cluster_reduce
