#pragma once

#include <utility>
#include <vector>

#include "modecert/certificate.hpp"
#include "modecert/multipoly.hpp"
#include "modecert/rational_expr.hpp"

namespace modecert {

// ---- shifts ----------------------------------------------------------------

// p(var -> var + offset), expanded exactly.
MultiPoly poly_shift(const MultiPoly& p, Var v, const Rat& offset);

// ---- division --------------------------------------------------------------

// Euclidean division in `var` of num by den, where den's leading coefficient
// in `var` must be a nonzero rational constant (the other variables may
// appear in lower-order coefficients of num).  Returns (quotient, remainder)
// with num == quotient * den + remainder and deg_var(remainder) < deg_var(den).
// The quotient is reported as a RationalExpr (it is in fact a polynomial with
// rational coefficients; the type matches the wider engine convention).
// Errors: DivisionByZeroPoly (den == 0), NonRationalInput (leading coefficient
// of den in `var` not constant).
std::pair<RationalExpr, MultiPoly> poly_divmod(const MultiPoly& num, const MultiPoly& den, Var v);

// Exact multivariate division: returns q with a == q * b; throws
// InternalError if b does not divide a exactly.
MultiPoly poly_exact_div(const MultiPoly& a, const MultiPoly& b);

// Multivariate gcd (primitive PRS).  Result is integer-primitive with
// positive leading coefficient; gcd(0, b) = primitive part of b.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// Exact square root of a polynomial that is a perfect square (univariate or
// constant); throws NonRationalInput otherwise.
MultiPoly poly_sqrt_exact(const MultiPoly& p);

// ---- univariate sign certificates ------------------------------------------

// Certifies  p(v) <= 0 for all v >= start  by the shift-and-sign rule: all
// coefficients of p(v + start) must be <= 0.  This is sufficient, not
// necessary.  The witness records the shifted coefficient list (ascending
// degree).  `strict` additionally requires the constant term to be < 0,
// certifying p < 0 on the half line.
Certificate nonpositive_on_halfline(const MultiPoly& p, Var v, const Rat& start,
                                    bool strict = false);

// Certifies that the univariate polynomial p has no root in [lo, hi] and is
// negative there (checked via p(lo) < 0 plus a Sturm-chain root count of
// zero).  PASS implies p < 0 on all of [lo, hi].
Certificate sturm_sign_on_interval(const MultiPoly& p, Var v, const Rat& lo, const Rat& hi);

// Number of distinct real roots of p in (lo, hi], by Sturm's theorem.
// Requires p(lo) != 0.
int sturm_root_count(const MultiPoly& p, Var v, const Rat& lo, const Rat& hi);

// ---- multivariate orthant sign certificates ---------------------------------

// Certifies  sign * p >= 0 (or > 0 when strict) on the product of half lines
// {v >= shift[v]} by shifting every listed variable to the origin and
// inspecting coefficient signs: after the shift all coefficients must have
// the sign of `sign` (or zero), and when strict the constant term must be
// nonzero.  Variables of p not listed in `shifts` must not occur.
Certificate orthant_sign(const MultiPoly& p, const std::map<Var, Rat>& shifts, int target_sign,
                         bool strict);

// ---- imaginary-axis split ---------------------------------------------------

// For a polynomial p in `vx` (coefficients may involve other variables),
// p(i t) = E(T) + i t O(T) with T = t^2.  Returns (E, O) written in `vT`.
std::pair<MultiPoly, MultiPoly> imaginary_axis_split(const MultiPoly& p, Var vx, Var vT);

// |p(i t)|^2 = E^2 + T O^2 as a polynomial in vT (and any other variables).
MultiPoly imaginary_axis_norm2(const MultiPoly& p, Var vx, Var vT);

}  // namespace modecert
