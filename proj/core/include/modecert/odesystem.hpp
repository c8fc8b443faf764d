#pragma once

#include <utility>

#include "modecert/cases.hpp"
#include "modecert/rational_expr.hpp"
#include "modecert/spherical.hpp"

namespace modecert {

// ---- radial mode equation ----------------------------------------------------
//
// After separating one angular block (l, m), the growth-rate equation for the
// radial profile phi(r) reads
//
//   (1 - r^2) phi'' + (2/r - 2(x + 1) r) phi' - (x^2 + x + V_{l,m}(r)) phi = 0
//
// with x the spectral parameter and the block potential
//
//   V_{l,m} = ((4 + 2m(m+1) - l(l+1)) r^4 + (2m(m+1) - 12) r^2 + l(l+1))
//             / (r^2 (1 + r^2)^2).

// Block potential for concrete indices; throws InvalidIndex unless the block
// is valid (valid_block).
RationalExpr potential(int l, int m);

// Block potential with symbolic degree: l is the variable Var::l and
// m = l + offset, offset in {-1, 0, +1}.
RationalExpr potential_family(int offset);

// phi'' + P phi' + Q phi = 0 normal form of the mode equation.
struct ModeODE {
  RationalExpr P;
  RationalExpr Q;
};

// transformed == false: potential V; true: the factorisation image potential.
ModeODE mode_ode(const RationalExpr& lambda, int l, int m, bool transformed);
ModeODE mode_ode_family(const RationalExpr& lambda, int offset);

// The left-hand side of the mode equation applied to phi (exactly zero iff
// phi solves the equation at rate lambda).
RationalExpr mode_ode_residual(const RationalExpr& phi, const RationalExpr& lambda, int l, int m,
                               bool transformed = false);
RationalExpr mode_ode_residual_family(const RationalExpr& phi, const RationalExpr& lambda,
                                      int offset);

// ---- factorisation transform ---------------------------------------------------

// Reference data for the blocks that admit a first-order factorisation.
struct SusyCase {
  int l, m;
  bool two_step = false;      // the (0,1) block uses a two-step factorisation
  Rat lambda0;                // rate of the primary reference solution
  RationalExpr phi0;          // primary reference solution
  RationalExpr omega0;        // first-order weight (derived, checked)
  Rat lambda1;                // two-step only: rate of the second reference
  RationalExpr phi1;          // two-step only: second reference solution
  RationalExpr omega1;        // two-step only: second weight
  RationalExpr v_plain;       // V_{l,m}
  RationalExpr v_transformed; // image potential of the factorisation
};

// Blocks (0,1), (1,0), (1,1), (2,1); throws UnsupportedCase otherwise.  All
// weights and potentials are re-derived on first access and checked against
// the stored reference values (TableMismatch on any discrepancy).
const SusyCase& susy_case(int l, int m);

// Applies the factorisation transform of block (l, m) to phi at spectral
// value lambda (symbolic or concrete).
RationalExpr susy_transform(const RationalExpr& phi, const RationalExpr& lambda, int l, int m);

// The image potential, derived from the factorisation by eliminating phi''
// through the mode equation and checked against the stored reference.
RationalExpr transformed_potential(int l, int m);

// ---- local exponents ----------------------------------------------------------

// Exponents of the regular singular point r0 of phi'' + P phi' + Q phi = 0:
// roots of s(s-1) + p0 s + q0 with p0 = lim (r-r0) P, q0 = lim (r-r0)^2 Q.
// Returned as (larger, smaller) by the leading coefficient of the exact
// square root of the discriminant.  Throws NotRegularSingular when the limits
// do not exist, NonRationalInput when the discriminant is not a perfect
// square over the rationals.
std::pair<RationalExpr, RationalExpr> frobenius_indices(const ModeODE& eq, const Rat& point,
                                                        Var radial = Var::r);

// ---- full linearised operator ---------------------------------------------------

// The linearised evolution operator applied to a polynomial profile at rate
// lambda, cleared of denominators by r^2 (1 + r^2).  Identically zero exactly
// when e^{lambda tau} * profile solves the linearised flow.
VectorField pde_residual(const VectorField& profile, const Rat& lambda);

}  // namespace modecert
