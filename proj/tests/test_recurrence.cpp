#include <cstddef>
#include <utility>
#include <vector>

#include "doctest.h"
#include "modecert/recurrence.hpp"

using namespace modecert;

namespace {

RationalExpr xx() { return RationalExpr::variable(Var::x); }
RationalExpr nn() { return RationalExpr::variable(Var::n); }
RationalExpr cnum(long v) { return RationalExpr(Rat(v)); }

RationalExpr at_n(const RationalExpr& f, long k) {
  return f.substitute(Var::n, cnum(k)).reduce();
}

// coefficients x_0..x_N of the series generated by the ratio recursion
std::vector<RationalExpr> series_coefficients(const RatioRecurrence& rec, int count) {
  std::vector<RationalExpr> xs;
  xs.push_back(cnum(1));
  xs.push_back(rec.r0);
  for (int k = 1; k + 1 < count; ++k) {
    RationalExpr next = (at_n(rec.A, k) * xs[k] + at_n(rec.B, k) * xs[k - 1]).reduce();
    xs.push_back(next);
  }
  return xs;
}

// the cleared residual of sum x_n z^n in the given equation must vanish to
// order count - 2 (the first truncated relation involves the missing x_count)
void check_series_solves(const std::vector<RationalExpr>& xs, const ModeODE& eq,
                         const RationalExpr& clearing) {
  RationalExpr z = RationalExpr::variable(Var::z);
  MultiPoly zp = MultiPoly::variable(Var::z);
  RationalExpr p = cnum(0);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    p += xs[k] * RationalExpr(zp.pow(static_cast<unsigned>(k)));
  }
  RationalExpr res =
      ((p.derivative(Var::z).derivative(Var::z) + eq.P * p.derivative(Var::z) + eq.Q * p) *
       clearing)
          .reduce();
  REQUIRE(res.is_polynomial());
  MultiPoly num = res.polynomial();
  for (int k = 0; k + 2 <= static_cast<int>(xs.size()); ++k) {
    CHECK(num.coefficient(Var::z, k).is_zero());
  }
}

}  // namespace

TEST_CASE("derived ratio coefficients agree with the stored closed forms") {
  // the routing entry re-derives every case from its rigid tuple and raises
  // TableMismatch on any disagreement with the stored displays
  for (const CaseKey& key : all_cases()) {
    CAPTURE(key.name());
    if (key == CaseKey::finite(0, 1)) continue;
    CHECK_NOTHROW(ratio_recurrence_case(key));
  }
  try {
    ratio_recurrence_case(CaseKey::finite(0, 1));
    CHECK(false);
  } catch (const EngineError& e) {
    CHECK(e.code() == ErrorCode::UnsupportedCase);
  }
}

TEST_CASE("opening values and first steps match hand computation") {
  RatioRecurrence rec = ratio_recurrence_case(CaseKey::finite(1, 0));
  std::map<Var, Rat> zero{{Var::x, Rat(0)}, {Var::n, Rat(1)}};
  CHECK(rec.r0.eval({{Var::x, Rat(0)}}) == rat(3, 7));
  CHECK(rec.A.eval(zero) == rat(7, 9));
  CHECK(rec.B.eval(zero) == rat(-1, 9));

  std::vector<Rat> r = ratio_iterates(rec, Rat(0), 3);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == rat(3, 7));
  CHECK(r[1] == rat(14, 27));
  CHECK(r[2] == rec.A.eval({{Var::x, Rat(0)}, {Var::n, Rat(2)}}) +
                    rec.B.eval({{Var::x, Rat(0)}, {Var::n, Rat(2)}}) / r[1]);
}

TEST_CASE("the recursion generates series solutions of the rigid equations") {
  const int count = 14;

  HeunForm h11 = heun_form(1, 1);
  RatioRecurrence rec11 = ratio_recurrence(h11);
  RationalExpr z = RationalExpr::variable(Var::z);
  RationalExpr clearing = z * (z - cnum(1)) * (z - cnum(2));
  check_series_solves(series_coefficients(rec11, count), h11.equation, clearing);

  HeunForm h22 = heun_form(2, 2);
  check_series_solves(series_coefficients(ratio_recurrence(h22), count), h22.equation, clearing);

  // the two-point block: ratios are explicit, not recursive
  HypergeomForm hg = hypergeometric_form();
  RationalExpr ratio = hypergeom_ratio(hg);
  std::vector<RationalExpr> xs;
  xs.push_back(cnum(1));
  for (int k = 0; k + 1 < count; ++k) {
    xs.push_back((at_n(ratio, k) * xs.back()).reduce());
  }
  check_series_solves(xs, hg.equation, z * (cnum(1) - z));
}

TEST_CASE("ratio coefficients have the expected limits and characteristic roots") {
  for (const CaseKey& key : all_cases()) {
    if (key == CaseKey::finite(0, 1)) continue;
    CAPTURE(key.name());
    RatioRecurrence rec = ratio_recurrence_case(key);
    auto [ainf, binf] = poincare_limits(rec);
    CHECK(ainf == rat(3, 2));
    CHECK(binf == rat(-1, 2));
    auto [big, small] = characteristic_roots(rec);
    CHECK(big == Rat(1));
    CHECK(small == rat(1, 2));
  }
}

TEST_CASE("the explicit two-point ratio marches to one") {
  HypergeomForm hg = hypergeometric_form();
  RationalExpr ratio = hypergeom_ratio(hg);
  RationalExpr n = nn();
  RationalExpr x = xx();
  RationalExpr display = (cnum(2) * n + cnum(3) + x) * (cnum(2) * n + cnum(2) + x) /
                         (cnum(2) * (n + cnum(1)) * (cnum(2) * n + cnum(7)));
  CHECK(ratio.equals(display));

  // difference from 1 decays like 1/n
  RationalExpr gap = (ratio - cnum(1)).reduce();
  CHECK(gap.num().degree(Var::n) < gap.den().degree(Var::n));

  Rat r500 = ratio.eval({{Var::n, Rat(500)}, {Var::x, Rat(0)}});
  CHECK(rat_abs(r500 - 1) < rat(2, 100));
}

TEST_CASE("stored quasisolution rows") {
  // every supported case has a row tending to 1
  for (const CaseKey& key : all_cases()) {
    if (key == CaseKey::finite(0, 1)) continue;
    CAPTURE(key.name());
    RationalExpr row = quasisolution(key);
    RationalExpr gap = (row - cnum(1)).reduce();
    CHECK(gap.num().degree(Var::n) < gap.den().degree(Var::n));
  }

  // spot values
  CHECK(quasisolution(CaseKey::finite(1, 0)).eval({{Var::n, Rat(1)}, {Var::x, Rat(0)}}) ==
        rat(2, 3));
  CHECK(quasisolution(CaseKey::finite(1, 1)).eval({{Var::n, Rat(0)}, {Var::x, Rat(0)}}) ==
        rat(3, 8));

  // the first family degree reuses the family rows ...
  CHECK(quasisolution(CaseKey::finite(3, 2))
            .equals(quasisolution(CaseKey::family(-1)).substitute(Var::l, cnum(3))));
  CHECK(quasisolution(CaseKey::finite(3, 3))
            .equals(quasisolution(CaseKey::family(0)).substitute(Var::l, cnum(3))));
  // ... while the lower blocks have their own tuned rows
  CHECK(!quasisolution(CaseKey::finite(2, 2))
             .equals(quasisolution(CaseKey::family(0)).substitute(Var::l, cnum(2))));
  CHECK(!quasisolution(CaseKey::finite(2, 3))
             .equals(quasisolution(CaseKey::family(1)).substitute(Var::l, cnum(2))));

  try {
    quasisolution(CaseKey::finite(0, 1));
    CHECK(false);
  } catch (const EngineError& e) {
    CHECK(e.code() == ErrorCode::UnsupportedCase);
  }
}

TEST_CASE("the relative-error recursion reproduces the exact errors") {
  CaseKey key = CaseKey::finite(1, 1);
  RatioRecurrence rec = ratio_recurrence_case(key);
  RationalExpr quasi = quasisolution(key);
  ErrorModel em = error_model(rec, quasi);

  const Rat lambda = rat(1, 3);
  const int count = 13;
  std::vector<Rat> r = ratio_iterates(rec, lambda, count);

  std::vector<Rat> e;
  for (int k = 0; k < count; ++k) {
    Rat quasi_k = quasi.eval({{Var::n, Rat(k)}, {Var::x, lambda}});
    REQUIRE(quasi_k != 0);
    e.push_back(r[static_cast<std::size_t>(k)] / quasi_k - 1);
  }
  for (int k = 1; k < count; ++k) {
    std::map<Var, Rat> pt{{Var::n, Rat(k)}, {Var::x, lambda}};
    Rat predicted = em.a.eval(pt) + em.b.eval(pt) * e[k - 1] / (1 + e[k - 1]);
    CHECK(e[static_cast<std::size_t>(k)] == predicted);
  }
  // the errors stay small on this sample
  for (int k = 2; k < count; ++k) {
    CHECK(rat_abs(e[static_cast<std::size_t>(k)]) < rat(1, 3));
  }
}

TEST_CASE("complex iteration specialises to the real one on the real axis") {
  RatioRecurrence rec = ratio_recurrence_case(CaseKey::finite(1, 1));
  std::vector<Rat> real = ratio_iterates(rec, rat(2, 5), 8);
  std::vector<CRat> cplx = ratio_iterates_complex(rec, CRat(rat(2, 5)), 8);
  REQUIRE(real.size() == cplx.size());
  for (std::size_t k = 0; k < real.size(); ++k) {
    CHECK(cplx[k].is_real());
    CHECK(cplx[k].re == real[k]);
  }

  // purely imaginary spectral value: iterates exist and stay nonzero
  std::vector<CRat> im = ratio_iterates_complex(rec, CRat(Rat(0), Rat(1)), 12);
  for (const CRat& v : im) CHECK(!v.is_zero());
}

TEST_CASE("iteration guards its preconditions") {
  RatioRecurrence family = ratio_recurrence_case(CaseKey::family(0));
  try {
    ratio_iterates(family, Rat(0), 4);
    CHECK(false);
  } catch (const EngineError& e) {
    CHECK(e.code() == ErrorCode::InternalError);
  }

  RatioRecurrence stuck{cnum(0), cnum(0), cnum(0)};
  try {
    ratio_iterates(stuck, Rat(0), 3);
    CHECK(false);
  } catch (const EngineError& e) {
    CHECK(e.code() == ErrorCode::RatioBreakdown);
  }
}
