#pragma once

#include <stdexcept>
#include <string>

namespace perimeter {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The parameter tuple falls outside the regime the game analysis covers.
class AssumptionViolated : public Error {
 public:
  enum class Clause {
    kLength,  // a length is non-positive or not finite
    kFirst,   // intruder could evade outside the sensing annulus
    kSecond,  // defender could not return to the center in time
    kSpeed,   // speed ratio outside (0, 1)
  };

  AssumptionViolated(Clause which, const std::string& detail)
      : Error(std::string("assumption violated (") + clause_name(which) + "): " + detail),
        which_(which) {}

  Clause which() const noexcept { return which_; }

  static const char* clause_name(Clause c) noexcept {
    switch (c) {
      case Clause::kLength: return "length";
      case Clause::kFirst: return "first";
      case Clause::kSecond: return "second";
      case Clause::kSpeed: return "speed";
    }
    return "unknown";
  }

 private:
  Clause which_;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public DomainError {
 public:
  using DomainError::DomainError;
};

class DegenerateCenter : public DomainError {
 public:
  using DomainError::DomainError;
};

class InfeasibleTau : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidCandidate : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Internal invariant failure: the engagement surface is empty.
class EmptyDomain : public Error {
 public:
  using Error::Error;
};

class NoTermination : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class ContourNotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace perimeter
