#pragma once

#include <stdexcept>
#include <string>

namespace aromatica {

// Malformed parent/successor maps, unparsable codes, bidegree violations.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Empty label sets, absent vertices, label clashes, non-preserving permutations.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ColourError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BasisMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// d∘d ≠ 0; `witness` names a basis element whose image under d∘d is nonzero.
struct ComplexInvalidError : std::runtime_error {
  ComplexInvalidError(const std::string& what, std::string witness_key)
      : std::runtime_error(what + " (witness: " + witness_key + ")"), witness(std::move(witness_key)) {}
  std::string witness;
};

struct UnsupportedInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IncompleteCoefficientsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace aromatica
