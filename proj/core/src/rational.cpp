#include "modecert/rational.hpp"

#include <stdexcept>

namespace modecert {

std::string to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorCode::NonRationalInput: return "NonRationalInput";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::UnsupportedCase: return "UnsupportedCase";
    case ErrorCode::EigenvalueMismatch: return "EigenvalueMismatch";
    case ErrorCode::TableMismatch: return "TableMismatch";
    case ErrorCode::NotRegularSingular: return "NotRegularSingular";
    case ErrorCode::DegenerateDivision: return "DegenerateDivision";
    case ErrorCode::SignAmbiguousDenominator: return "SignAmbiguousDenominator";
    case ErrorCode::RatioBreakdown: return "RatioBreakdown";
    case ErrorCode::NoBoundsRow: return "NoBoundsRow";
    case ErrorCode::NotCertified: return "NotCertified";
    case ErrorCode::CertificateFailed: return "CertificateFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "UnknownError";
}

Rat rat_parse(const std::string& text) {
  if (text.empty()) raise(ErrorCode::ParseError, "empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/')) {
      raise(ErrorCode::ParseError, "invalid character in rational literal: " + text);
    }
  }
  try {
    Rat q(text);
    q.canonicalize();
    if (q.get_den() == 0) raise(ErrorCode::DivisionByZeroPoly, "zero denominator: " + text);
    return q;
  } catch (const std::invalid_argument&) {
    raise(ErrorCode::ParseError, "invalid rational literal: " + text);
  }
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

int sign(const Rat& q) { return sgn(q); }

Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

Rat rat_pow(const Rat& base, unsigned exponent) {
  Rat result(1);
  Rat b = base;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1u;
  }
  return result;
}

Rat rat_sqrt_exact(const Rat& q) {
  if (q < 0) raise(ErrorCode::NonRationalInput, "square root of negative rational");
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  if (sn * sn != num || sd * sd != den) {
    raise(ErrorCode::NonRationalInput, "rational is not a perfect square: " + q.get_str());
  }
  Rat r(sn, sd);
  r.canonicalize();
  return r;
}

std::string to_string(const CRat& z) {
  if (z.im == 0) return rat_to_string(z.re);
  std::string s = rat_to_string(z.re);
  s += (z.im < 0) ? " - " : " + ";
  s += rat_to_string(rat_abs(z.im)) + "*i";
  return s;
}

}  // namespace modecert
