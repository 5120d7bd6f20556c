#pragma once

#include <stdexcept>
#include <string>

namespace freetwist {

// Base of every error raised by the library. The three subclasses map onto
// the CLI exit codes 1, 2 and 3 respectively.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad dimensions, unparsable words, out-of-range indices.
class InvalidInput : public Error {
  public:
    using Error::Error;
};

// Structurally well-formed input that violates an algebraic axiom
// (A-infinity relations, Maurer-Cartan, strict unitality, cocycle conditions).
class ValidationFailure : public Error {
  public:
    using Error::Error;
};

// A map that should square to zero does not. Always a bug or corrupt data.
class NotAComplex : public Error {
  public:
    using Error::Error;
};

} // namespace freetwist
