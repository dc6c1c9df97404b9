#pragma once

#include <stdexcept>
#include <string>

namespace biortho {

// Base class for everything this library throws on purpose. Callers that
// only want "did it work" can catch this; the concrete types below exist so
// that tests and the CLI can map failures to distinct outcomes.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A matrix that was required to be Hermitian is not, beyond tolerance.
class NotHermitian : public Error {
public:
  using Error::Error;
};

// A backend decomposition failed to converge or failed its residual check.
class NumericalFailure : public Error {
public:
  using Error::Error;
};

// A matrix that must be invertible is singular to working precision.
class SingularInput : public Error {
public:
  using Error::Error;
};

// A matrix that must be positive semi-definite has a genuinely negative
// eigenvalue (beyond the rounding floor).
class NotPSD : public Error {
public:
  using Error::Error;
};

// Operands have incompatible shapes.
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

// A pair failed the biorthogonality residual check.
class NotBiorthogonal : public Error {
public:
  using Error::Error;
};

// An operation that requires a regular pair (vector count equal to the space
// dimension) was given something else.
class NotRegular : public Error {
public:
  using Error::Error;
};

// A matrix that must be unitary is not, beyond tolerance.
class NotUnitary : public Error {
public:
  using Error::Error;
};

// The pair's condition number exceeds the cap for the requested operation.
class ConditioningExceeded : public Error {
public:
  using Error::Error;
};

// The operation needs a larger space (e.g. ladder operators need dim >= 2).
class DimensionTooSmall : public Error {
public:
  using Error::Error;
};

// A scalar parameter is out of its documented range.
class BadParameter : public Error {
public:
  using Error::Error;
};

// Input file is not syntactically valid JSON.
class ParseError : public Error {
public:
  using Error::Error;
};

// Input file is valid JSON but does not match the pair-file schema.
class SchemaError : public Error {
public:
  using Error::Error;
};

// Input file matches the schema but carries unusable values (non-finite
// entries, zero columns, inconsistent row lengths, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

// A family was asked to classify/sweep but does not produce regular pairs.
class FamilyNotRegular : public Error {
public:
  using Error::Error;
};

} // namespace biortho
