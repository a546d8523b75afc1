#pragma once

#include <stdexcept>
#include <string>

namespace homfinsler {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (e.g. F(0), n < 2).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Dimension mismatch or a dimension for which the operation is undefined.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A non-finite value appeared in a jet; the message names the multi-index.
class JetPropagationError : public Error {
 public:
  using Error::Error;
};

/// A series failed to reach its tolerance within the term cap.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Fundamental tensor not positive definite, or (alpha,beta) data inadmissible.
class InadmissibleNormError : public Error {
 public:
  using Error::Error;
};

/// phi - s phi' vanished, or a linear system was singular.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// A supplied inner product is not Ad(H)-invariant.
class InvarianceError : public Error {
 public:
  using Error::Error;
};

/// A precondition of a formula does not hold (non-commuting pair, KVCL failure, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Structural check failed (bracket closure, rank inequality, catalog exclusion).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Requested Lie algebra is only present as catalog data.
class NotRealizedError : public Error {
 public:
  using Error::Error;
};

/// Chart point outside the exponential-coordinate chart radius.
class ChartRadiusError : public Error {
 public:
  using Error::Error;
};

/// Malformed run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace homfinsler
