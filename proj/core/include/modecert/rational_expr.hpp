#pragma once

#include <map>
#include <string>

#include "modecert/multipoly.hpp"

namespace modecert {

// Quotient of two MultiPoly values.
//
// Normalisation (cheap, applied after every operation): the denominator is
// made integer-primitive with positive leading coefficient, so the integer
// content of the denominator is positive and coprime to the numerator's
// content.  Common *polynomial* factors are NOT removed automatically —
// removing them requires a multivariate gcd, which callers request
// explicitly via reduce() at the points where cancellation matters.
class RationalExpr {
 public:
  RationalExpr() : num_(), den_(MultiPoly(Rat(1))) {}
  RationalExpr(const Rat& c) : num_(MultiPoly(c)), den_(MultiPoly(Rat(1))) {}
  RationalExpr(long c) : num_(MultiPoly(Rat(c))), den_(MultiPoly(Rat(1))) {}
  RationalExpr(MultiPoly p) : num_(std::move(p)), den_(MultiPoly(Rat(1))) {}
  RationalExpr(MultiPoly num, MultiPoly den);

  static RationalExpr variable(Var v) { return RationalExpr(MultiPoly::variable(v)); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  // Requires is_polynomial().
  MultiPoly polynomial() const;
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rat constant_value() const;

  RationalExpr operator-() const;
  friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);
  RationalExpr& operator+=(const RationalExpr& o) { return *this = *this + o; }
  RationalExpr& operator-=(const RationalExpr& o) { return *this = *this - o; }
  RationalExpr& operator*=(const RationalExpr& o) { return *this = *this * o; }
  RationalExpr& operator/=(const RationalExpr& o) { return *this = *this / o; }

  // Mathematical equality (cross multiplication; independent of reduction).
  bool equals(const RationalExpr& o) const;
  friend bool operator==(const RationalExpr& a, const RationalExpr& b) { return a.equals(b); }
  friend bool operator!=(const RationalExpr& a, const RationalExpr& b) { return !a.equals(b); }

  RationalExpr derivative(Var v) const;

  // Substitute a rational expression for a variable.
  RationalExpr substitute(Var v, const RationalExpr& value) const;
  RationalExpr shift(Var v, const Rat& offset) const;

  // Cancel the multivariate gcd of numerator and denominator.
  RationalExpr reduce() const;

  Rat eval(const std::map<Var, Rat>& point) const;
  CRat eval_complex(const std::map<Var, CRat>& point) const;

  bool contains(Var v) const { return num_.contains(v) || den_.contains(v); }

  // "num" when the denominator is 1, otherwise "(num) / (den)".
  std::string to_string() const;
  static RationalExpr parse(const std::string& text);

 private:
  void normalize();
  MultiPoly num_;
  MultiPoly den_;
};

}  // namespace modecert
