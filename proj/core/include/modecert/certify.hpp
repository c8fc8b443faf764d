#pragma once
// Certificate suite for the ratio-convergence argument.
//
// For every block with a three-term series recursion the engine certifies,
// with exact rational arithmetic only, the full chain of statements that pins
// the inverse convergence radius of the smooth series solution at 1 whenever
// the spectral parameter has nonnegative real part:
//
//   * root certificates      - the stored quasisolution row never vanishes on
//                              the closed right half plane (both roots of the
//                              quadratic are negative reals),
//   * Wall certificates      - the finite iterate r_{n0} is analytic there:
//                              its denominator passes Wall's continued
//                              fraction test for Hurwitz polynomials,
//   * coefficient bounds     - |a_n| and |b_n| of the relative-error
//                              recursion obey the stored envelope rows on the
//                              imaginary axis (Phragmen-Lindelof transfers
//                              the bound to the half plane),
//   * initial error bound    - |e_{n0}| <= u on the imaginary axis,
//   * closure certificate    - the envelopes propagate the error bound 1/3
//                              through e_n = a_n + b_n e_{n-1}/(1+e_{n-1}),
//   * limit certificates     - the recursion coefficients converge to
//                              (3/2, -1/2), so the possible ratio limits are
//                              exactly {1, 1/2}, and the error bound excludes
//                              1/2,
//   * decay certificate      - the two-point block ("01") instead decays at
//                              infinity, forcing regular solutions to vanish.
//
// Every certificate carries re-verifiable witnesses: shifted polynomials
// whose coefficient signs are evident, partial quotients, and root data.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modecert/cases.hpp"
#include "modecert/certificate.hpp"
#include "modecert/multipoly.hpp"
#include "modecert/rational.hpp"
#include "modecert/rational_expr.hpp"
#include "modecert/recurrence.hpp"

namespace modecert {

// Envelope row driving the error-propagation certificates of one case:
// |a_n| <= a_bar(n), |b_n| <= b_bar(n) for n >= n0, and |e_{n0}| <= u.
struct BoundRow {
  RationalExpr a_bar;
  RationalExpr b_bar;
  int n0 = 0;
  Rat u;
  std::string origin;  // "stored" or "derived"
};

// Stored envelope rows.  Throws NoBoundsRow for "10" (no stored row; see
// derive_corotational_row) and UnsupportedCase for "01".
BoundRow bound_row(const CaseKey& key);

// Lower bounds of the certified parameter domain for a case: n >= n_min and,
// for family keys, l >= l_min.  Root certificates use n >= 1; everything else
// starts at the row's n0.
std::map<Var, Rat> case_domain(const CaseKey& key, const Rat& n_min);

// The exact ratio iterate r_n as a rational function of the spectral
// variable (Var::x; families also Var::l).  r_0 = q / (2 gamma) and
// r_n = A_n + B_n / r_{n-1} with the integer index substituted.
RationalExpr ratio_iterate_symbolic(const CaseKey& key, int n);

// Relative-error recursion coefficients a_n, b_n of the case against its
// stored quasisolution row.
ErrorModel error_model_case(const CaseKey& key);

// Primitive integer polynomial  F y^2 - G x^2  in Var::T (and whatever index
// variables f carries), where |f(i t)|^2 = F(T) / G(T) on the imaginary axis
// (T = t^2, both norms taken of the reduced numerator and denominator) and
// x / y is the bound under test.  Nonpositivity for T >= 0 certifies
// |f(i t)| <= x / y wherever f is finite.  The bound may itself depend on the
// index variables (envelope rows do); it must not involve Var::x or Var::T.
MultiPoly axis_margin(const RationalExpr& f, const Rat& bound);
MultiPoly axis_margin(const RationalExpr& f, const RationalExpr& bound);

// Wall partial quotients of a polynomial in Var::x whose coefficients may be
// rational in Var::l.  Successive division of the part carrying the leading
// power by the complementary parity part; every step must drop the degree by
// exactly one (DegenerateDivision otherwise).  Exactly deg(d) quotients.
// All quotients positive <=> every root of d has negative real part.
std::vector<RationalExpr> wall_quotients(const MultiPoly& d);

// Proves  target * f > 0  on the product of half lines {v >= lows[v]} for
// every variable of f, by coefficient signs after shifting; falls back to a
// slightly deeper shift plus exact checks at the skipped integer points.
Certificate strict_sign_tail(const RationalExpr& f, int target, const std::map<Var, Rat>& lows);

// Individual certificates.  All throw UnsupportedCase when handed "01",
// except certify_decay which handles only that block.
Certificate certify_root_negativity(const CaseKey& key);
Certificate certify_wall(const CaseKey& key, int n0);
Certificate certify_coefficient_bound(const CaseKey& key, const BoundRow& row, bool second);
Certificate certify_initial_error(const CaseKey& key, const BoundRow& row);
Certificate certify_closure(const CaseKey& key, const BoundRow& row);
Certificate certify_poincare(const CaseKey& key);
Certificate certify_decay();

// How to treat the corotational block "10", which has no stored envelope row:
// derive one from exact axis samples and certify it like every other case, or
// defer to the published corotational result.
enum class CorotationalPolicy { AutoDerive, External };

// Candidate construction + exact certification for "10".  Returns the first
// fully certified row, or nullopt when no candidate certifies.
std::optional<BoundRow> derive_corotational_row();

struct CaseReport {
  CaseKey key;
  std::vector<Certificate> certificates;
  std::optional<BoundRow> row;  // row used (absent for "01" and external "10")
  bool certified = false;       // convergence fully established internally
  bool external = false;        // "10" delegated to the published result
  std::string summary;
};

CaseReport verify_case(const CaseKey& key,
                       CorotationalPolicy policy = CorotationalPolicy::AutoDerive);
std::vector<CaseReport> verify_all(CorotationalPolicy policy = CorotationalPolicy::AutoDerive);

}  // namespace modecert
