#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace otarith {

// Machine-readable failure codes. Every code maps to a stable string used in
// CLI reports, so renaming an enumerator is a wire-format change.
enum class ErrorCode {
  // exact-linalg
  NotSublattice,
  SingularLattice,
  // numfield
  Reducible,
  NonMonic,
  InvalidBasis,
  MixedFields,
  ZeroElement,
  // ideal-arith
  ZeroIdeal,
  NonInvertible,
  CapExceeded,
  IndexDivisor,
  NotAUnitResidue,
  // unit-groups
  NonIntegral,
  NotUnit,
  DependentGenerators,
  NotInSpan,
  NotSubgroup,
  SearchExhausted,
  // ot-aut
  UnsupportedSignature,
  NotAdmissible,
  NotSimpleType,
  MissingUnitBasis,
  ContextMismatch,
  // ray-class
  NotExceptional,
  NonIntegralRatio,
  // torsion-growth
  TorsionUnit,
  // cli
  ParseError,
  ShapeError,
  // anything that indicates a bug rather than bad input
  Internal,
};

std::string_view to_string(ErrorCode code);

// True for hypothesis violations and refusals (exit code 2 in the CLI),
// false for malformed input and internal failures (exit code 1).
bool is_refusal(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace otarith
