#pragma once

#include <stdexcept>
#include <string>

namespace qd {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch, non-square input, inconsistent bipartite dims.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input expected to be Hermitian (or a valid density matrix) is not.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function (angle ranges, spectra, spins).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed state, chain or config file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line arguments or option values.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace qd
