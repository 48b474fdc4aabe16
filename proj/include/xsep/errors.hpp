#pragma once

#include <stdexcept>
#include <string>

namespace xsep {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NotSelfAdjoint : Error {
  explicit NotSelfAdjoint(const std::string& what = "matrix is not self-adjoint") : Error(what) {}
};

struct NegativeDiagonal : Error {
  explicit NegativeDiagonal(const std::string& what = "negative diagonal entry") : Error(what) {}
};

struct NotAState : Error {
  explicit NotAState(const std::string& what = "input is not a state") : Error(what) {}
};

struct DegenerateEntries : Error {
  explicit DegenerateEntries(const std::string& what = "degenerate entries; regularization disabled")
      : Error(what) {}
};

struct UnsupportedCone : Error {
  explicit UnsupportedCone(const std::string& what = "cone has no catalog characterization") : Error(what) {}
};

struct UnsupportedPart : Error {
  explicit UnsupportedPart(const std::string& what = "part tag not supported by the decomposition search")
      : Error(what) {}
};

struct BadDims : Error {
  explicit BadDims(const std::string& what = "local dimensions must be at least 2") : Error(what) {}
};

struct OutOfRange : Error {
  explicit OutOfRange(const std::string& what = "argument out of range") : Error(what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

// Raised when an ExactRational computation would require an irrational value
// (root products of non-squares, moduli of generic complex entries).
struct InexactValue : Error {
  explicit InexactValue(const std::string& what = "value is not exactly representable; use Float mode")
      : Error(what) {}
};

struct SyntaxError : Error {
  std::size_t position;
  SyntaxError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), position(pos) {}
};

}  // namespace xsep
