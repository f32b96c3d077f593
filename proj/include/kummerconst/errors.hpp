#pragma once

#include <stdexcept>
#include <string>

namespace kummerconst {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (a = 0, p | a, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A family or evaluation request that cannot be honoured as specified
/// (z <= 0, missing growth bound, cutoff below an entangled prime, ...).
class SpecError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured size or time budget.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class FactorizationTimeout : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

/// An internal consistency check failed; always indicates a bug.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// An oracle found a counterexample to a closed formula.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

class SingularCurve : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace kummerconst
