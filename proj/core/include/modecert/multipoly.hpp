#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "modecert/rational.hpp"

namespace modecert {

// Fixed, ordered variable universe.  The order below is also the print order
// inside a monomial and the significance order of the graded-lex term order.
//   n : recurrence index
//   l : angular degree parameter (symbolic families)
//   x : spectral parameter
//   T : square of the imaginary spectral coordinate (x = i t, T = t^2)
//   z : standard-form independent variable
//   r : radial coordinate
//   y1,y2,y3 : ambient coordinates for vector-field computations
enum class Var : int { n = 0, l = 1, x = 2, T = 3, z = 4, r = 5, y1 = 6, y2 = 7, y3 = 8 };

inline constexpr int kVarCount = 9;

const char* var_name(Var v);
Var var_from_name(const std::string& name);

using Exponents = std::array<std::int32_t, kVarCount>;

inline constexpr Exponents kZeroExponents{};

// Graded lexicographic order, descending: higher total degree first, ties
// broken lexicographically with Var::n most significant.  Iterating a term
// map in this order yields the canonical text form directly.
struct GradedLexDesc {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = 0, db = 0;
    for (int i = 0; i < kVarCount; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db;
    for (int i = 0; i < kVarCount; ++i) {
      if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  }
};

// Dense-exponent sparse multivariate polynomial with exact rational
// coefficients.  The term map never stores zero coefficients, which makes
// structural equality coincide with mathematical equality.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rat, GradedLexDesc>;

  MultiPoly() = default;
  explicit MultiPoly(const Rat& c);
  explicit MultiPoly(long c);

  static MultiPoly constant(const Rat& c);
  static MultiPoly variable(Var v);
  static MultiPoly monomial(const Rat& c, const Exponents& e);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Requires is_constant(); the zero polynomial yields 0.
  Rat constant_value() const;

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  // Degree conventions: degree of the zero polynomial is -1.
  int degree(Var v) const;
  int total_degree() const;
  bool contains(Var v) const;
  std::vector<Var> variables() const;

  // Leading coefficient / term under the graded-lex-descending order.
  const Rat& leading_coefficient() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rat& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rat& c) { return a *= c; }
  friend MultiPoly operator*(const Rat& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(unsigned k) const;
  MultiPoly derivative(Var v) const;

  // Polynomial substitution v -> q.
  MultiPoly substitute(Var v, const MultiPoly& q) const;

  // The coefficient of v^k, a polynomial in the remaining variables.
  MultiPoly coefficient(Var v, int k) const;
  // All (exponent, coefficient) pairs in v, ascending exponent, including
  // only the exponents that occur.
  std::vector<std::pair<int, MultiPoly>> coefficients(Var v) const;

  // Evaluation; every variable occurring in the polynomial must be assigned.
  Rat eval(const std::map<Var, Rat>& point) const;
  CRat eval_complex(const std::map<Var, CRat>& point) const;

  // Positive rational c such that (*this)/c has coprime integer coefficients.
  // Returns 0 for the zero polynomial.
  Rat content() const;
  // (*this) / content, with the leading coefficient made positive; the sign
  // that was removed is reported via *sign_out when non-null.
  MultiPoly primitive_part(int* sign_out = nullptr) const;

  // Canonical text form, e.g. "3/2 * n^2 * x + 1 * n - 5".
  std::string to_string() const;
  // Strict parser for the canonical text form (round-trips to_string).
  static MultiPoly parse(const std::string& text);

 private:
  void add_term(const Exponents& e, const Rat& c);
  TermMap terms_;

  friend class RationalExpr;
};

inline MultiPoly operator+(MultiPoly a, const Rat& c) { return a += MultiPoly(c); }
inline MultiPoly operator-(MultiPoly a, const Rat& c) { return a -= MultiPoly(c); }

}  // namespace modecert
