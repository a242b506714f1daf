#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbu3 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed literal. `position` is a 0-based character offset into the input.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position(position) {}
  std::size_t position;
};

/// Operands over different algebras or variable tables.
struct IncompatibleOperands : Error {
  IncompatibleOperands() : Error("incompatible operands") {}
  explicit IncompatibleOperands(const std::string& detail)
      : Error("incompatible operands: " + detail) {}
};

/// The linear part of an ansatz has no solution.
struct ContradictoryAnsatz : Error {
  ContradictoryAnsatz() : Error("contradictory ansatz") {}
};

}  // namespace rbu3
