#pragma once

#include <stdexcept>
#include <string>

namespace dpseq {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller supplied an argument outside an operation's domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A group table file or string was rejected.
class IngestionError : public Error {
 public:
  using Error::Error;
};

/// A construction produced output that failed its own verification.
class ConstructionBug : public Error {
 public:
  using Error::Error;
};

/// A construction's preconditions hold but no ingredient could be found.
class ConstructionInfeasible : public Error {
 public:
  using Error::Error;
};

/// The requested object is known not to exist.
class DocumentedNonexistence : public Error {
 public:
  using Error::Error;
};

/// The request reduces to a case this library deliberately does not cover.
class OutOfScope : public Error {
 public:
  using Error::Error;
};

/// An internal invariant was violated.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace dpseq
