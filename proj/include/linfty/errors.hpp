#ifndef LINFTY_ERRORS_HPP
#define LINFTY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace linfty {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller passed inconsistent arguments (mismatched bases, bad degrees, ...).
struct ArgumentError : Error {
  using Error::Error;
};

/// A verified algebraic identity failed; the message names the identity and a witness.
struct StructureError : Error {
  using Error::Error;
};

/// An operation's stated precondition does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

/// A windowed computation cannot represent the requested result.
struct WindowError : Error {
  using Error::Error;
};

/// Input outside the supported finitely presented fragment.
struct UnsupportedError : Error {
  using Error::Error;
};

/// Unknown fixture or section name.
struct LookupError : Error {
  using Error::Error;
};

/// Description-file syntax or semantic error, with source position.
struct ParseError : Error {
  ParseError(const std::string& what, int line, int col)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
        line(line), col(col) {}
  int line = 0;
  int col = 0;
};

}  // namespace linfty

#endif
