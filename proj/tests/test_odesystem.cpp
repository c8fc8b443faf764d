#include <map>
#include <random>
#include <vector>

#include "doctest.h"
#include "modecert/cases.hpp"
#include "modecert/odesystem.hpp"
#include "modecert/poly_algorithms.hpp"
#include "series_testutil.hpp"

using namespace modecert;
using namespace series_test;

namespace {

RationalExpr rx() { return RationalExpr::variable(Var::r); }
RationalExpr xx() { return RationalExpr::variable(Var::x); }

// f(r) / (1 + r^2) for a polynomial radial factor f
RationalExpr over_one_plus_r2(const MultiPoly& f) {
  MultiPoly r = MultiPoly::variable(Var::r);
  return RationalExpr(f) / RationalExpr(MultiPoly(Rat(1)) + r * r);
}

// r^k / (1 + r^2)^3, the smooth radial ansatz basis
RationalExpr ansatz_basis(int k) {
  MultiPoly r = MultiPoly::variable(Var::r);
  MultiPoly one_plus = MultiPoly(Rat(1)) + r * r;
  return RationalExpr(r.pow(static_cast<unsigned>(k))) / RationalExpr(one_plus.pow(3));
}

// r / (1 - r^4) and r^2 / (1 - r^4): the non-smooth factorisation kernels
RationalExpr nonsmooth_partner(int power) {
  MultiPoly r = MultiPoly::variable(Var::r);
  MultiPoly den = MultiPoly(Rat(1)) - r.pow(4);
  return RationalExpr(r.pow(static_cast<unsigned>(power))) / RationalExpr(den);
}

// rank of a rational matrix via Gaussian elimination
int field_rank(std::vector<std::vector<Rat>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  size_t pivot_row = 0;
  for (size_t col = 0; col < cols && pivot_row < rows; ++col) {
    size_t sel = pivot_row;
    while (sel < rows && m[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[pivot_row]);
    for (size_t i = 0; i < rows; ++i) {
      if (i != pivot_row && m[i][col] != 0) {
        Rat f = m[i][col] / m[pivot_row][col];
        for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[pivot_row][j];
      }
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("case keys name the twelve verification targets") {
  CHECK(finite_cases().size() == 9);
  CHECK(family_cases().size() == 3);
  CHECK(all_cases().size() == 12);
  std::vector<std::string> expected = {"01", "10", "11", "12", "21", "22",
                                       "23", "32", "33", "l1", "l2", "l3"};
  std::vector<CaseKey> all = all_cases();
  for (size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].name() == expected[i]);
    CHECK(CaseKey::from_name(expected[i]) == all[i]);
  }
  CHECK(CaseKey::family(-1).is_family());
  CHECK(!CaseKey::finite(1, 1).is_family());
  CHECK_THROWS_AS(CaseKey::from_name("zz"), EngineError);
  CHECK_THROWS_AS(CaseKey::family(2), EngineError);
}

TEST_CASE("block potential matches its closed form on reference blocks") {
  MultiPoly r = MultiPoly::variable(Var::r);
  MultiPoly one_plus = MultiPoly(Rat(1)) + r * r;
  MultiPoly den = r * r * one_plus * one_plus;

  // (1,1): (6 r^4 - 8 r^2 + 2) / (r^2 (1+r^2)^2)
  MultiPoly num11 = MultiPoly(Rat(6)) * r.pow(4) - MultiPoly(Rat(8)) * r.pow(2) + MultiPoly(Rat(2));
  CHECK(potential(1, 1).equals(RationalExpr(num11) / RationalExpr(den)));

  // (0,1): 8 (r^2 - 1) / (1+r^2)^2
  RationalExpr v01 = RationalExpr(Rat(8)) * (rx() * rx() - RationalExpr(Rat(1))) /
                     RationalExpr(one_plus * one_plus);
  CHECK(potential(0, 1).equals(v01));

  CHECK_THROWS_AS(potential(0, 0), EngineError);
  CHECK_THROWS_AS(potential(5, 3), EngineError);
  CHECK_THROWS_AS(potential_family(2), EngineError);
}

TEST_CASE("family potential specialises to the concrete blocks") {
  for (int offset = -1; offset <= 1; ++offset) {
    RationalExpr fam = potential_family(offset);
    for (int l = 2; l <= 6; ++l) {
      int m = l + offset;
      RationalExpr specialised = fam.substitute(Var::l, RationalExpr(Rat(l))).reduce();
      CHECK(specialised.equals(potential(l, m)));
    }
  }
}

TEST_CASE("normal form and residual agree") {
  RationalExpr lambda = xx();
  ModeODE eq = mode_ode(lambda, 1, 1, false);
  RationalExpr phi = over_one_plus_r2(MultiPoly::variable(Var::r) +
                                      MultiPoly::variable(Var::r).pow(3));
  RationalExpr d1 = phi.derivative(Var::r);
  RationalExpr d2 = d1.derivative(Var::r);
  MultiPoly r = MultiPoly::variable(Var::r);
  RationalExpr one_minus(MultiPoly(Rat(1)) - r * r);
  RationalExpr combined = one_minus * (d2 + eq.P * d1 + eq.Q * phi);
  CHECK(combined.equals(mode_ode_residual(phi, lambda, 1, 1, false)));
}

TEST_CASE("every catalogue mode solves its radial equation") {
  for (const Mode& mode : mode_catalogue()) {
    RationalExpr phi = over_one_plus_r2(mode.radial_factor);
    RationalExpr res = mode_ode_residual(phi, RationalExpr(mode.lambda), mode.l, mode.m);
    CHECK(res.is_zero());
  }
}

TEST_CASE("catalogue radial profiles fail at the wrong rate") {
  RationalExpr phi = over_one_plus_r2(MultiPoly::variable(Var::r));
  CHECK(!mode_ode_residual(phi, RationalExpr(Rat(1)), 1, 1).is_zero());
  CHECK(!mode_ode_residual(phi, RationalExpr(Rat(0)), 1, 0).is_zero());
}

TEST_CASE("every catalogue mode is annihilated by the full linearised operator") {
  for (const Mode& mode : mode_catalogue()) {
    VectorField res = pde_residual(mode.profile, mode.lambda);
    for (int i = 0; i < 3; ++i) CHECK(res.comp[i].is_zero());
  }
}

TEST_CASE("a wrong-rate perturbation is not annihilated") {
  MultiPoly y1 = MultiPoly::variable(Var::y1);
  MultiPoly y2 = MultiPoly::variable(Var::y2);
  MultiPoly y3 = MultiPoly::variable(Var::y3);
  MultiPoly r2 = y1 * y1 + y2 * y2 + y3 * y3;

  // rate-1 profile plus a small multiple of a rate-0 profile: no single rate
  // annihilates the superposition
  VectorField perturbed;
  perturbed.comp[0] = y1 + MultiPoly(Rat(1, 10)) * (r2 - MultiPoly(Rat(3)));
  perturbed.comp[1] = y2;
  perturbed.comp[2] = y3;
  for (const Rat& lam : {Rat(1), Rat(0)}) {
    VectorField res = pde_residual(perturbed, lam);
    bool all_zero = res.comp[0].is_zero() && res.comp[1].is_zero() && res.comp[2].is_zero();
    CHECK(!all_zero);
  }

  // a superposition of two profiles of the same rate stays annihilated
  VectorField same_rate;
  same_rate.comp[0] = y1 + MultiPoly(Rat(1, 10));
  same_rate.comp[1] = y2;
  same_rate.comp[2] = y3;
  VectorField res = pde_residual(same_rate, Rat(1));
  CHECK(res.comp[0].is_zero());
  CHECK(res.comp[1].is_zero());
  CHECK(res.comp[2].is_zero());
}

TEST_CASE("factorisation reference data is internally consistent") {
  // forces the re-derivation checks inside susy_case
  CHECK_NOTHROW(susy_case(0, 1));
  CHECK_NOTHROW(susy_case(1, 0));
  CHECK_NOTHROW(susy_case(1, 1));
  CHECK_NOTHROW(susy_case(2, 1));
  CHECK_THROWS_AS(susy_case(2, 2), EngineError);

  MultiPoly r = MultiPoly::variable(Var::r);
  RationalExpr six_over_r2 = RationalExpr(Rat(6)) / RationalExpr(r * r);
  CHECK(transformed_potential(0, 1).equals(six_over_r2));

  MultiPoly one_plus = MultiPoly(Rat(1)) + r * r;
  RationalExpr v10 = (RationalExpr(Rat(6)) - RationalExpr(Rat(2)) * rx() * rx()) /
                     RationalExpr(r * r * one_plus);
  CHECK(transformed_potential(1, 0).equals(v10));

  RationalExpr v21 = RationalExpr(Rat(12)) / RationalExpr(r * r * one_plus);
  CHECK(transformed_potential(2, 1).equals(v21));
}

TEST_CASE("the factorisation annihilates its reference solutions") {
  for (auto [l, m] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 1}}) {
    const SusyCase& sc = susy_case(l, m);
    RationalExpr out = susy_transform(sc.phi0, RationalExpr(sc.lambda0), l, m);
    CHECK(out.is_zero());
  }
  const SusyCase& sc01 = susy_case(0, 1);
  CHECK(susy_transform(sc01.phi0, RationalExpr(sc01.lambda0), 0, 1).is_zero());
  CHECK(susy_transform(sc01.phi1, RationalExpr(sc01.lambda1), 0, 1).is_zero());
}

TEST_CASE("the factorisation does not annihilate off-rate profiles") {
  const SusyCase& sc = susy_case(1, 1);
  CHECK(!susy_transform(sc.phi0, RationalExpr(Rat(1)), 1, 1).is_zero());
  CHECK(!mode_ode_residual(sc.phi0, RationalExpr(Rat(1)), 1, 1).is_zero());
}

TEST_CASE("non-smooth kernel partners solve the equation and the factorisation") {
  // (1,1) at rate 2: r / (1 - r^4)
  RationalExpr p11 = nonsmooth_partner(1);
  CHECK(mode_ode_residual(p11, RationalExpr(Rat(2)), 1, 1).is_zero());
  CHECK(susy_transform(p11, RationalExpr(Rat(2)), 1, 1).is_zero());

  // (2,1) at rate 2: r^2 / (1 - r^4)
  RationalExpr p21 = nonsmooth_partner(2);
  CHECK(mode_ode_residual(p21, RationalExpr(Rat(2)), 2, 1).is_zero());
  CHECK(susy_transform(p21, RationalExpr(Rat(2)), 2, 1).is_zero());

  // (0,1) at rate 2: (r^2 - 3) / ((1 + r^2)(1 - r^2))
  MultiPoly r = MultiPoly::variable(Var::r);
  RationalExpr p01 = RationalExpr(r * r - MultiPoly(Rat(3))) /
                     RationalExpr((MultiPoly(Rat(1)) + r * r) * (MultiPoly(Rat(1)) - r * r));
  CHECK(mode_ode_residual(p01, RationalExpr(Rat(2)), 0, 1).is_zero());
  CHECK(susy_transform(p01, RationalExpr(Rat(2)), 0, 1).is_zero());
}

TEST_CASE("the rate-shift factorisation kernel closes only where the rates match") {
  // For the block whose reference rate is 1, a function annihilated by the
  // factorisation at rate 3 exists but cannot also solve the mode equation:
  // the defect is (rate(2-rate) - 1)/(1-r^2)^2, nonzero unless rate == 1.
  RationalExpr p11 = nonsmooth_partner(1);
  CHECK(susy_transform(p11, RationalExpr(Rat(3)), 1, 0).is_zero());
  CHECK(!mode_ode_residual(p11, RationalExpr(Rat(3)), 1, 0).is_zero());
}

TEST_CASE("local exponents at the regular singular points") {
  RationalExpr lambda = xx();
  RationalExpr one(Rat(1));

  for (auto [l, m] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 1}, {2, 1}, {2, 2}}) {
    ModeODE eq = mode_ode(lambda, l, m, false);
    auto [plus0, minus0] = frobenius_indices(eq, Rat(0));
    CHECK(plus0.equals(RationalExpr(Rat(l))));
    CHECK(minus0.equals(RationalExpr(Rat(-(l + 1)))));
    auto [plus1, minus1] = frobenius_indices(eq, Rat(1));
    CHECK(plus1.equals(RationalExpr(Rat(0))));
    CHECK(minus1.equals(one - lambda));
  }

  // transformed (0,1) block: exponents 2 and -3 at the origin
  ModeODE teq = mode_ode(lambda, 0, 1, true);
  auto [tp, tm] = frobenius_indices(teq, Rat(0));
  CHECK(tp.equals(RationalExpr(Rat(2))));
  CHECK(tm.equals(RationalExpr(Rat(-3))));

  // families keep symbolic exponents l and -(l+1) at the origin
  for (int offset = -1; offset <= 1; ++offset) {
    ModeODE feq = mode_ode_family(lambda, offset);
    auto [fp, fm] = frobenius_indices(feq, Rat(0));
    RationalExpr lvar = RationalExpr::variable(Var::l);
    CHECK(fp.equals(lvar));
    CHECK(fm.equals(RationalExpr(Rat(0)) - lvar - one));
  }
}

TEST_CASE("irregular points and irrational exponents are rejected") {
  MultiPoly r = MultiPoly::variable(Var::r);
  ModeODE bad;
  bad.P = RationalExpr(Rat(1)) / RationalExpr(r * r);
  bad.Q = RationalExpr(Rat(0));
  try {
    frobenius_indices(bad, Rat(0));
    CHECK(false);
  } catch (const EngineError& e) {
    CHECK(e.code() == ErrorCode::NotRegularSingular);
  }

  ModeODE irr;
  irr.P = RationalExpr(Rat(0));
  irr.Q = RationalExpr(Rat(-1)) / RationalExpr(r * r);
  try {
    frobenius_indices(irr, Rat(0));
    CHECK(false);
  } catch (const EngineError& e) {
    CHECK(e.code() == ErrorCode::NonRationalInput);
  }
}

TEST_CASE("the factorisation intertwines the two equations on random series solutions") {
  const Rat r0(1, 2);
  std::mt19937 rng(20260815u);
  auto random_rat = [&rng]() {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    return rat(num(rng), den(rng));
  };
  std::vector<Rat> rates = {Rat(0), Rat(1), Rat(1, 2), Rat(-2, 3), Rat(3)};
  std::vector<std::pair<int, int>> blocks = {{1, 0}, {1, 1}, {2, 1}, {0, 1}};

  int trials = 0;
  for (auto [l, m] : blocks) {
    const SusyCase& sc = susy_case(l, m);
    for (const Rat& lam : rates) {
      RationalExpr lambda(lam);
      ModeODE plain = mode_ode(lambda, l, m, false);
      ModeODE image = mode_ode(lambda, l, m, true);
      Series p = series_of_expr(plain.P, Var::r, r0);
      Series q = series_of_expr(plain.Q, Var::r, r0);
      Series pt = series_of_expr(image.P, Var::r, r0);
      Series qt = series_of_expr(image.Q, Var::r, r0);

      MultiPoly rp = MultiPoly::variable(Var::r);
      Series one_minus = series_of_poly(MultiPoly(Rat(1)) - rp * rp, Var::r, r0);
      RationalExpr one(Rat(1));
      RationalExpr mfac(MultiPoly(Rat(1)) - rp * rp);

      for (int rep = 0; rep < 3; ++rep) {
        Series phi = series_solution(p, q, random_rat(), random_rat() + Rat(1, 7));
        Series s;
        if (!sc.two_step) {
          RationalExpr rho = one / rx() - lambda * rx() / mfac - sc.omega0;
          Series rho_s = series_of_expr(rho, Var::r, r0);
          s = one_minus * (series_derivative(phi) + rho_s * phi);
        } else {
          RationalExpr rho0 = one / rx() - lambda * rx() / mfac - sc.omega0;
          RationalExpr rho1 =
              one / rx() - (lambda + RationalExpr(Rat(2))) * rx() / mfac - sc.omega1;
          Series u = series_derivative(phi) + series_of_expr(rho0, Var::r, r0) * phi;
          s = one_minus * one_minus *
              (series_derivative(u) + series_of_expr(rho1, Var::r, r0) * u);
        }
        Series residual =
            series_derivative(series_derivative(s)) + pt * series_derivative(s) + qt * s;
        for (size_t k = 0; k <= 14; ++k) CHECK(residual.c[k] == 0);
        ++trials;
      }
    }
  }
  CHECK(trials >= 50);
}

TEST_CASE("joint kernel dimensions over the smooth ansatz") {
  // phi = N(r) / (1+r^2)^3 with deg N <= 10; dimension of
  // { N : mode equation residual == 0 and factorisation image == 0 }.
  const int kAnsatz = 11;
  std::vector<Rat> rates = {Rat(0), Rat(1), Rat(2), Rat(3), Rat(1, 2)};
  std::vector<std::pair<int, int>> blocks = {{1, 0}, {1, 1}, {2, 1}, {0, 1}};
  std::map<std::pair<int, int>, std::map<Rat, int>> expected;
  expected[{1, 0}][Rat(1)] = 1;
  expected[{1, 1}][Rat(0)] = 1;
  expected[{2, 1}][Rat(0)] = 1;
  expected[{0, 1}][Rat(0)] = 1;
  expected[{0, 1}][Rat(1)] = 1;

  for (auto [l, m] : blocks) {
    for (const Rat& lam : rates) {
      std::vector<RationalExpr> residuals;
      std::vector<RationalExpr> images;
      for (int k = 0; k < kAnsatz; ++k) {
        RationalExpr phi = ansatz_basis(k);
        residuals.push_back(mode_ode_residual(phi, RationalExpr(lam), l, m).reduce());
        images.push_back(susy_transform(phi, RationalExpr(lam), l, m).reduce());
      }
      auto stack_rows = [&](const std::vector<RationalExpr>& exprs,
                            std::vector<std::vector<Rat>>& rows) {
        MultiPoly common(Rat(1));
        for (const RationalExpr& e : exprs) {
          MultiPoly g = poly_gcd(common, e.den());
          common = poly_exact_div(common * e.den(), g);
        }
        std::map<int, std::vector<Rat>> by_degree;
        for (int k = 0; k < kAnsatz; ++k) {
          RationalExpr cleared = exprs[k] * RationalExpr(common);
          REQUIRE(cleared.reduce().is_polynomial());
          MultiPoly poly = cleared.reduce().polynomial();
          for (const auto& [deg, coeff] : poly.coefficients(Var::r)) {
            auto it = by_degree.find(deg);
            if (it == by_degree.end()) {
              it = by_degree.emplace(deg, std::vector<Rat>(kAnsatz, Rat(0))).first;
            }
            it->second[k] = coeff.constant_value();
          }
        }
        for (auto& [deg, row] : by_degree) rows.push_back(row);
      };
      std::vector<std::vector<Rat>> rows;
      stack_rows(residuals, rows);
      stack_rows(images, rows);
      int dim = kAnsatz - field_rank(rows);
      int want = 0;
      auto itb = expected.find({l, m});
      if (itb != expected.end()) {
        auto itr = itb->second.find(lam);
        if (itr != itb->second.end()) want = itr->second;
      }
      CAPTURE(l);
      CAPTURE(m);
      CHECK(dim == want);
    }
  }
}
