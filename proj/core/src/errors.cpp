#include "otarith/errors.hpp"

#include <stdexcept>

#include "otarith/bigint.hpp"

namespace otarith {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSublattice: return "NotSublattice";
    case ErrorCode::SingularLattice: return "SingularLattice";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::NonMonic: return "NonMonic";
    case ErrorCode::InvalidBasis: return "InvalidBasis";
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::ZeroIdeal: return "ZeroIdeal";
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::IndexDivisor: return "IndexDivisor";
    case ErrorCode::NotAUnitResidue: return "NotAUnitResidue";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::DependentGenerators: return "DependentGenerators";
    case ErrorCode::NotInSpan: return "NotInSpan";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::UnsupportedSignature: return "UnsupportedSignature";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NotSimpleType: return "NotSimpleType";
    case ErrorCode::MissingUnitBasis: return "MissingUnitBasis";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::NotExceptional: return "NotExceptional";
    case ErrorCode::NonIntegralRatio: return "NonIntegralRatio";
    case ErrorCode::TorsionUnit: return "TorsionUnit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Internal";
}

bool is_refusal(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ShapeError:
    case ErrorCode::Internal:
    case ErrorCode::NonIntegralRatio:
      return false;
    default:
      return true;
  }
}

namespace {

bool valid_integer_text(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Int parse_int(const std::string& text) {
  if (!valid_integer_text(text)) throw std::invalid_argument("not an integer: '" + text + "'");
  std::string s = text[0] == '+' ? text.substr(1) : text;
  return Int(s, 10);
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  std::string den_text = text.substr(slash + 1);
  if (den_text.empty() || den_text[0] == '-' || den_text[0] == '+')
    throw std::invalid_argument("bad denominator: '" + text + "'");
  Int den = parse_int(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace otarith
