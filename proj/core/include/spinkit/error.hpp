#pragma once

#include <stdexcept>
#include <string>

namespace spinkit {

// Failure categories carried by every spinkit::Error.  Checks that merely
// *fail* return a report instead of throwing; Error is for malformed inputs,
// broken invariants, and unsatisfiable requests.
enum class ErrKind {
  ConstraintViolation,   // parameter violates a required algebraic identity
  IncompatibleMode,      // backend cannot represent the requested evaluation mode
  DivisionByZero,
  NonInvertible,         // element has no inverse in the chosen representation
  ShapeMismatch,
  SizeLimit,
  BadPrime,              // Paley construction needs an odd prime q = 3 mod 4
  ParseError,
  OrderMismatch,         // matrix/Hadamard sizes disagree
  NonInvertibleEntry,    // matrix entry cannot be inverted when forming ratios
  AmbiguousZero,         // zero test undecidable at the configured tolerance
  AmbiguousEdge,         // graph edge undecidable: refuse to guess adjacency
  DefinitionMismatch,    // two constructions of the same relation disagree
  FusionMismatch,        // fused orbit family is not the expected scheme
  IoError,
  Internal,
};

const char* to_string(ErrKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg),
        kind_(kind) {}

  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

}  // namespace spinkit
