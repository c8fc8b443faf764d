#pragma once

#include <utility>
#include <vector>

#include "modecert/cases.hpp"
#include "modecert/standardform.hpp"

namespace modecert {

// ---- series ratio recursion ---------------------------------------------------
//
// The analytic solution sum x_n z^n of the rigid-form equation obeys the
// three-term relation
//
//   R_n x_{n+1} - (Q_n + q) x_n + P_n x_{n-1} = 0,
//   R_n = 2 (n + 1) (gamma + n),
//   P_n = (n - 1 + alpha) (n - 1 + beta),
//   Q_n = n (3 (n - 1 + gamma) + 2 delta + epsilon),
//
// so the consecutive ratios r_n = x_{n+1} / x_n satisfy
//
//   r_n = A_n + B_n / r_{n-1},  A_n = (Q_n + q) / R_n,  B_n = -P_n / R_n,
//
// with the opening value r_0 = q / (2 gamma).

struct RatioRecurrence {
  RationalExpr A;   // functions of Var::n and Var::x (families also Var::l)
  RationalExpr B;
  RationalExpr r0;  // opening ratio x_1 / x_0
};

RatioRecurrence ratio_recurrence(const HeunForm& h);

// Routes a case key through the rigid reduction and cross-checks the derived
// coefficient functions against the stored closed forms (TableMismatch on any
// discrepancy).  The two-point block "01" has explicit ratios instead; see
// hypergeom_ratio.  Throws UnsupportedCase for it.
RatioRecurrence ratio_recurrence_case(const CaseKey& key);

// Coefficient ratio x_{n+1}/x_n = (n + a)(n + b) / ((n + 1)(n + c)) of the
// two-point rigid solution, as a function of Var::n and Var::x.
RationalExpr hypergeom_ratio(const HypergeomForm& f);

// Stored quasisolution row approximating the true ratio sequence of the case
// (function of Var::n and Var::x; families also Var::l).  Throws
// UnsupportedCase for "01", which needs no quasisolution.
RationalExpr quasisolution(const CaseKey& key);

// Relative-error recursion: e_n = r_n / r~_n - 1 obeys
// e_n = a_n + b_n e_{n-1} / (1 + e_{n-1}).
struct ErrorModel {
  RationalExpr a;  // a_n = (A_n r~_{n-1} + B_n) / (r~_{n-1} r~_n) - 1
  RationalExpr b;  // b_n = -B_n / (r~_{n-1} r~_n)
};
ErrorModel error_model(const RatioRecurrence& rec, const RationalExpr& quasi);

// Exact iterates r_0 .. r_{count-1} at a rational (or complex rational)
// spectral value.  RatioBreakdown if some iterate vanishes (the next step
// would divide by zero); InternalError if the coefficients still contain the
// family degree variable.
std::vector<Rat> ratio_iterates(const RatioRecurrence& rec, const Rat& lambda, int count);
std::vector<CRat> ratio_iterates_complex(const RatioRecurrence& rec, const CRat& lambda,
                                         int count);

// Limits (A_inf, B_inf) of the coefficient functions as n -> infinity.
// NonRationalInput when a limit does not exist or is not a plain rational.
std::pair<Rat, Rat> poincare_limits(const RatioRecurrence& rec);

// Roots (larger, smaller) of the limiting fixed-point equation
// t^2 - A_inf t - B_inf = 0.
std::pair<Rat, Rat> characteristic_roots(const RatioRecurrence& rec);

}  // namespace modecert
