#pragma once

#include "modecert/odesystem.hpp"

namespace modecert {

// ---- coordinate and gauge moves --------------------------------------------
//
// Three elementary moves bring the radial mode equation to a standard
// rigid form with singular points {0, 1, 2} (plus infinity):
//
//   1. square_variable: z = r^2, turning the half-line equation into one on
//      [0, 1] with regular singular points 0 and 1 (coefficient functions must
//      be even in r; the odd part has to cancel identically).
//   2. mobius_two_over: z -> 2z/(1+z) (applied as the substitution
//      z = w/(2-w)), moving the singular points (0, 1, -1, inf) to
//      (0, 1, 2, inf).  The new variable is again stored as Var::z.
//   3. conjugate_exponents: w = z^{e0} (2-z)^{e2} v, removing the leading
//      local exponents so the remaining solution is analytic with v(0) != 0.

ModeODE square_variable(const ModeODE& eq);
ModeODE mobius_two_over(const ModeODE& eq);
ModeODE conjugate_exponents(const ModeODE& eq, const RationalExpr& e0, const RationalExpr& e2);

// ---- rigid normal forms ------------------------------------------------------

// z(1-z) psi'' + (c - (a+b+1) z) psi' - a b psi = 0
struct HypergeomForm {
  RationalExpr a, b, c;  // a - b constant, a the larger branch
  ModeODE equation;      // reduced equation (variable Var::z); analytic at 0
};

// Reduction of the factorised l = 0 block.  The spectral parameter stays
// symbolic (Var::x).
HypergeomForm hypergeometric_form();

// P = gamma/z + delta/(z-1) + epsilon/(z-2),
// Q = (alpha beta z - q) / (z (z-1) (z-2)),
// with alpha + beta + 1 = gamma + delta + epsilon and (alpha, beta) the
// exponents at infinity (alpha the branch smaller at spectral value 0).
struct HeunForm {
  RationalExpr gamma, delta, epsilon;
  RationalExpr alpha, beta;
  RationalExpr q;      // accessory parameter
  RationalExpr e0, e2; // conjugation exponents used in the reduction
  ModeODE equation;    // final equation (variable Var::z); analytic at 0
};

// Reduction of block (l, m) with l >= 1.  Blocks possessing a first-order
// factorisation ((1,0), (1,1), (2,1)) are reduced through their image
// equation; all others through the plain mode equation.  The spectral
// parameter stays symbolic.
HeunForm heun_form(int l, int m);

// Same with symbolic degree, m = l + offset.
HeunForm heun_form_family(int offset);

}  // namespace modecert
