#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotPSD : public Error {
 public:
  using Error::Error;
};

class Singular : public Error {
 public:
  using Error::Error;
};

class NotDiagonal : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class NotInterior : public Error {
 public:
  using Error::Error;
};

class NotEmpty : public Error {
 public:
  using Error::Error;
};

class EmptyRegion : public Error {
 public:
  using Error::Error;
};

class NotBounded : public Error {
 public:
  using Error::Error;
};

class NotSimplex : public Error {
 public:
  using Error::Error;
};

class NotOneVariable : public Error {
 public:
  using Error::Error;
};

class NoInterior : public Error {
 public:
  using Error::Error;
};

class NotTwoVariables : public Error {
 public:
  using Error::Error;
};

/// A hypothesis of a constructor does not hold; `witness` names the point,
/// vertex or ray that violates it (rational strings, comma separated).
class PreconditionFailed : public Error {
 public:
  PreconditionFailed(const std::string& what, std::string witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

class PositivityFailed : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

class NotNonnegative : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

}  // namespace spectra
