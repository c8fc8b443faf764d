#pragma once

#include <gmpxx.h>

#include <string>

#include "modecert/errors.hpp"

namespace modecert {

// Exact rational scalar.  All symbolic computation in the engine is carried
// out over this type; floating point appears only in the numeric cross-check
// layer.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) raise(ErrorCode::DivisionByZeroPoly, "rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "-p", or "p/q" with arbitrary-precision integers.
Rat rat_parse(const std::string& text);

std::string rat_to_string(const Rat& q);

int sign(const Rat& q);

Rat rat_abs(const Rat& q);

Rat rat_pow(const Rat& base, unsigned exponent);

// Exact square root; throws NonRationalInput when the argument is not the
// square of a rational.
Rat rat_sqrt_exact(const Rat& q);

// Complex number with exact rational real and imaginary parts.  Used for the
// exact phase of the recurrence iteration at spectral samples a + b*i.
struct CRat {
  Rat re{0};
  Rat im{0};

  CRat() = default;
  CRat(Rat r) : re(std::move(r)) {}
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  CRat conj() const { return CRat(re, -im); }
  Rat norm2() const { return re * re + im * im; }  // |z|^2, exact

  CRat operator-() const { return CRat(-re, -im); }

  friend CRat operator+(const CRat& a, const CRat& b) { return CRat(a.re + b.re, a.im + b.im); }
  friend CRat operator-(const CRat& a, const CRat& b) { return CRat(a.re - b.re, a.im - b.im); }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return CRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend CRat operator/(const CRat& a, const CRat& b) {
    Rat n2 = b.norm2();
    if (n2 == 0) raise(ErrorCode::DivisionByZeroPoly, "complex division by zero");
    CRat num = a * b.conj();
    return CRat(num.re / n2, num.im / n2);
  }
  friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }
};

std::string to_string(const CRat& z);

}  // namespace modecert
