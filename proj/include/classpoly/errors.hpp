#pragma once

#include <stdexcept>
#include <string>

namespace classpoly {

/// Root of every error this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (sqrt of a
/// negative, j at a point off the upper half-plane, division by zero).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Discriminant or input integer outside the supported family
/// (n not congruent to 11 mod 24, non-squarefree where squarefree is needed).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class InvalidFormError : public Error {
 public:
  using Error::Error;
};

/// The working precision was too small to land a result; retry with more bits.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Retries exhausted the precision cap.
class PrecisionExhaustedError : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  using Error::Error;
};

/// Two computations that must agree did not (for instance a relation of
/// lower degree than the class number).
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// A candidate polynomial failed one of the Ramanujan-polynomial checks.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

/// A proved identity did not hold on computed data; always a pipeline bug.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

class TableMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace classpoly
