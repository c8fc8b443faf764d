#include "doctest.h"

#include <random>

#include "modecert/multipoly.hpp"
#include "modecert/poly_algorithms.hpp"
#include "modecert/rational_expr.hpp"

using namespace modecert;

namespace {

MultiPoly V(Var v) { return MultiPoly::variable(v); }
MultiPoly C(long n, long d = 1) { return MultiPoly(rat(n, d)); }

MultiPoly random_poly(std::mt19937& rng, std::vector<Var> vars, int max_deg, int terms) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  MultiPoly p;
  for (int i = 0; i < terms; ++i) {
    Exponents e = kZeroExponents;
    for (Var v : vars) e[static_cast<int>(v)] = deg(rng);
    p += MultiPoly::monomial(rat(num(rng), den(rng)), e);
  }
  return p;
}

}  // namespace

TEST_CASE("binomial shift expands exactly") {
  // shift(x^2, x, 1) = x^2 + 2x + 1
  MultiPoly x2 = V(Var::x) * V(Var::x);
  MultiPoly shifted = poly_shift(x2, Var::x, rat(1));
  CHECK(shifted == V(Var::x) * V(Var::x) + C(2) * V(Var::x) + C(1));

  // shift(n^2 - 4, n, 2) = n^2 + 4n
  MultiPoly p = V(Var::n) * V(Var::n) - C(4);
  CHECK(poly_shift(p, Var::n, rat(2)) == V(Var::n) * V(Var::n) + C(4) * V(Var::n));
}

TEST_CASE("shift round-trips under negated offset") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    MultiPoly p = random_poly(rng, {Var::n, Var::l, Var::x}, 4, 6);
    Rat off = rat((trial % 11) - 5, (trial % 3) + 1);
    CHECK(poly_shift(poly_shift(p, Var::n, off), Var::n, -off) == p);
  }
}

TEST_CASE("euclidean division in one variable") {
  // (x^2 + 1) / x -> quotient x, remainder 1
  auto [q1, r1] = poly_divmod(V(Var::x) * V(Var::x) + C(1), V(Var::x), Var::x);
  CHECK(q1 == RationalExpr(V(Var::x)));
  CHECK(r1 == C(1));

  // x^3 / (x + 1) -> quotient x^2 - x + 1, remainder -1
  auto [q2, r2] = poly_divmod(V(Var::x).pow(3), V(Var::x) + C(1), Var::x);
  CHECK(q2 == RationalExpr(V(Var::x) * V(Var::x) - V(Var::x) + C(1)));
  CHECK(r2 == C(-1));
}

TEST_CASE("division reconstructs the dividend") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    MultiPoly a = random_poly(rng, {Var::x}, 7, 6);
    MultiPoly b = random_poly(rng, {Var::x}, 3, 4) + V(Var::x).pow(3);  // guarantee monic-ish lead
    if (b.is_zero()) continue;
    auto [q, r] = poly_divmod(a, b, Var::x);
    REQUIRE(q.is_polynomial());
    CHECK(q.polynomial() * b + r == a);
    CHECK(r.degree(Var::x) < b.degree(Var::x));
  }
}

TEST_CASE("division by zero polynomial is rejected") {
  CHECK_THROWS_AS(poly_divmod(V(Var::x), MultiPoly(), Var::x), EngineError);
}

TEST_CASE("division requiring a non-constant leading coefficient is rejected") {
  // Leading coefficient in x is the polynomial l, outside the supported domain.
  MultiPoly den = V(Var::l) * V(Var::x) + C(1);
  CHECK_THROWS_AS(poly_divmod(V(Var::x).pow(2), den, Var::x), EngineError);
}

TEST_CASE("halfline nonpositivity by shifted coefficient signs") {
  // -T - 1 <= 0 on T >= 0: PASS
  Certificate c1 = nonpositive_on_halfline(-V(Var::T) - C(1), Var::T, rat(0));
  CHECK(c1.pass);
  REQUIRE(c1.shifted_coefficients.size() == 2);
  CHECK(c1.shifted_coefficients[0] == rat(-1));
  CHECK(c1.shifted_coefficients[1] == rat(-1));

  // T - 1 is positive for large T: FAIL
  Certificate c2 = nonpositive_on_halfline(V(Var::T) - C(1), Var::T, rat(0));
  CHECK_FALSE(c2.pass);

  // -(T^2 - 6T + 5) <= 0 for T >= 5: shifted polynomial is -T^2 - 4T
  MultiPoly p = -(V(Var::T) * V(Var::T) - C(6) * V(Var::T) + C(5));
  Certificate c3 = nonpositive_on_halfline(p, Var::T, rat(5));
  CHECK(c3.pass);
  REQUIRE(c3.shifted_coefficients.size() == 3);
  CHECK(c3.shifted_coefficients[0] == rat(0));
  CHECK(c3.shifted_coefficients[1] == rat(-4));
  CHECK(c3.shifted_coefficients[2] == rat(-1));

  // Same polynomial from 0 would cross zero: FAIL
  CHECK_FALSE(nonpositive_on_halfline(p, Var::T, rat(0)).pass);

  // Strict mode requires a negative constant term.
  CHECK_FALSE(nonpositive_on_halfline(-V(Var::T), Var::T, rat(0), /*strict=*/true).pass);
  CHECK(nonpositive_on_halfline(-V(Var::T) - C(1), Var::T, rat(0), /*strict=*/true).pass);
}

TEST_CASE("sign certificates on intervals via Sturm chains") {
  // T - 30 on [0, 25]: no root, negative at 0 -> PASS
  Certificate c1 = sturm_sign_on_interval(V(Var::T) - C(30), Var::T, rat(0), rat(25));
  CHECK(c1.pass);

  // T - 10 on [0, 25]: has a root -> FAIL
  Certificate c2 = sturm_sign_on_interval(V(Var::T) - C(10), Var::T, rat(0), rat(25));
  CHECK_FALSE(c2.pass);

  // T + 1 on [0, 25]: positive -> FAIL
  CHECK_FALSE(sturm_sign_on_interval(V(Var::T) + C(1), Var::T, rat(0), rat(25)).pass);

  // Root exactly at an endpoint -> FAIL
  CHECK_FALSE(sturm_sign_on_interval(V(Var::T) - C(25), Var::T, rat(0), rat(25)).pass);

  // (T - 1)(T - 5)(T - 100) is negative on [10, 20] with no root there.
  MultiPoly p = (V(Var::T) - C(1)) * (V(Var::T) - C(5)) * (V(Var::T) - C(100));
  CHECK(sturm_sign_on_interval(p, Var::T, rat(10), rat(20)).pass);
  CHECK_FALSE(sturm_sign_on_interval(p, Var::T, rat(0), rat(20)).pass);
}

TEST_CASE("sturm root counting handles repeated roots") {
  // (T - 2)^2 (T - 7): distinct roots {2, 7}
  MultiPoly p = (V(Var::T) - C(2)) * (V(Var::T) - C(2)) * (V(Var::T) - C(7));
  CHECK(sturm_root_count(p, Var::T, rat(0), rat(10)) == 2);
  CHECK(sturm_root_count(p, Var::T, rat(0), rat(3)) == 1);
  CHECK(sturm_root_count(p, Var::T, rat(3), rat(5)) == 0);
}

TEST_CASE("multivariate orthant sign certificate") {
  // n*l + 3 > 0 on n,l >= 1 (strict).
  MultiPoly p = V(Var::n) * V(Var::l) + C(3);
  std::map<Var, Rat> shifts{{Var::n, rat(1)}, {Var::l, rat(1)}};
  CHECK(orthant_sign(p, shifts, +1, true).pass);

  // n - l has mixed signs.
  CHECK_FALSE(orthant_sign(V(Var::n) - V(Var::l), shifts, +1, false).pass);

  // -(n + l) - 1 < 0 strictly on the shifted orthant.
  CHECK(orthant_sign(-V(Var::n) - V(Var::l) - C(1), shifts, -1, true).pass);

  // n*l >= 0 non-strictly even from 0, but not strictly (no constant term).
  std::map<Var, Rat> at0{{Var::n, rat(0)}, {Var::l, rat(0)}};
  CHECK(orthant_sign(V(Var::n) * V(Var::l), at0, +1, false).pass);
  CHECK_FALSE(orthant_sign(V(Var::n) * V(Var::l), at0, +1, true).pass);
}

TEST_CASE("canonical text rendering") {
  CHECK(MultiPoly().to_string() == "0");
  CHECK(C(3, 2).to_string() == "3/2");
  CHECK((-V(Var::T) - C(1)).to_string() == "-1 * T - 1");
  MultiPoly p = V(Var::n) * V(Var::n) + C(4) * V(Var::n);
  CHECK(p.to_string() == "1 * n^2 + 4 * n");
  // Graded order with ties broken by the fixed variable order.
  MultiPoly q = V(Var::l) + V(Var::n) * V(Var::l) + C(2) * V(Var::x) + C(1);
  CHECK(q.to_string() == "1 * n * l + 1 * l + 2 * x + 1");
}

TEST_CASE("canonical text parses back to the same polynomial") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 60; ++trial) {
    MultiPoly p = random_poly(rng, {Var::n, Var::l, Var::x, Var::T}, 5, 8);
    CHECK(MultiPoly::parse(p.to_string()) == p);
  }
}

TEST_CASE("parser rejects non-canonical text") {
  CHECK_THROWS_AS(MultiPoly::parse("n^2+4n"), EngineError);
  CHECK_THROWS_AS(MultiPoly::parse("4 * n + 1 * n^2"), EngineError);  // wrong order
  CHECK_THROWS_AS(MultiPoly::parse("1 * n^1"), EngineError);          // explicit exponent 1
  CHECK_THROWS_AS(MultiPoly::parse("0 * n"), EngineError);            // zero term
  CHECK_THROWS_AS(MultiPoly::parse("2 * n + 3 * n"), EngineError);    // duplicate monomial
  CHECK_THROWS_AS(MultiPoly::parse("1 * q"), EngineError);            // unknown variable
  CHECK_THROWS_AS(MultiPoly::parse(""), EngineError);
  CHECK_THROWS_AS(MultiPoly::parse("1 *  n"), EngineError);           // spacing is significant
}

TEST_CASE("rational expression canonicalisation and equality") {
  RationalExpr half(MultiPoly(rat(1)), MultiPoly(rat(2)));
  CHECK(half == RationalExpr(rat(1, 2)));

  // Denominator normalised to positive-leading integer-primitive form.
  RationalExpr e(V(Var::x), C(-2) * V(Var::n));
  CHECK(e.den().to_string() == "1 * n");
  CHECK(e.num().to_string() == "-1/2 * x");

  // Equality is mathematical, not structural.
  RationalExpr a(V(Var::x) * V(Var::x) - C(1), V(Var::x) - C(1));
  RationalExpr b(V(Var::x) + C(1), MultiPoly(rat(1)));
  CHECK(a == b);
  CHECK(a.reduce().num() == b.num());
  CHECK(a.reduce().den() == b.den());
}

TEST_CASE("rational expression arithmetic and derivative") {
  RationalExpr x = RationalExpr::variable(Var::x);
  RationalExpr one(rat(1));
  // d/dx (1/x) = -1/x^2
  RationalExpr inv = one / x;
  CHECK(inv.derivative(Var::x) == -(one / (x * x)));
  // (1/x + x) = (1 + x^2)/x
  CHECK((inv + x) == RationalExpr(C(1) + V(Var::x) * V(Var::x), V(Var::x)));
  CHECK_THROWS_AS(one / RationalExpr(rat(0)), EngineError);
}

TEST_CASE("explicit reduction cancels shared polynomial factors") {
  // ((x + l - 2)(x + 1)) / ((x + l - 2)(x + 2)) reduces to (x + 1)/(x + 2).
  MultiPoly common = V(Var::x) + V(Var::l) - C(2);
  RationalExpr e(common * (V(Var::x) + C(1)), common * (V(Var::x) + C(2)));
  RationalExpr reduced = e.reduce();
  CHECK(reduced.num() == V(Var::x) + C(1));
  CHECK(reduced.den() == V(Var::x) + C(2));
  CHECK(e == reduced);
}

TEST_CASE("multivariate gcd on random products") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 15; ++trial) {
    MultiPoly g = random_poly(rng, {Var::x, Var::l}, 2, 3) + V(Var::x).pow(2);
    MultiPoly a = random_poly(rng, {Var::x, Var::l}, 2, 3);
    MultiPoly b = random_poly(rng, {Var::x, Var::l}, 2, 3);
    if (a.is_zero() || b.is_zero()) continue;
    MultiPoly d = poly_gcd(g * a, g * b);
    // gcd must contain g (up to the gcd of a and b).
    CHECK(poly_exact_div(d, poly_gcd(d, g)) * poly_gcd(d, g) == d);
    MultiPoly q = poly_gcd(d, g);
    CHECK(q.degree(Var::x) >= 0);
    // g divides d
    bool divides = true;
    try {
      (void)poly_exact_div(d, g);
    } catch (const EngineError&) {
      divides = false;
    }
    CHECK(divides);
  }
}

TEST_CASE("perfect square root of discriminant-style polynomials") {
  // 4l^2 + 4l + 1 = (2l + 1)^2
  MultiPoly disc = C(4) * V(Var::l) * V(Var::l) + C(4) * V(Var::l) + C(1);
  CHECK(poly_sqrt_exact(disc) == C(2) * V(Var::l) + C(1));
  CHECK(poly_sqrt_exact(C(25)) == C(5));
  CHECK(poly_sqrt_exact(C(9, 4)) == C(3, 2));
  CHECK_THROWS_AS(poly_sqrt_exact(V(Var::l) + C(1)), EngineError);
  CHECK_THROWS_AS(poly_sqrt_exact(C(2)), EngineError);
}

TEST_CASE("imaginary axis split and squared modulus") {
  // p(x) = x^2 + x + 1: p(it) = (1 - T) + i t * 1
  MultiPoly p = V(Var::x) * V(Var::x) + V(Var::x) + C(1);
  auto [E, O] = imaginary_axis_split(p, Var::x, Var::T);
  CHECK(E == C(1) - V(Var::T));
  CHECK(O == C(1));
  MultiPoly n2 = imaginary_axis_norm2(p, Var::x, Var::T);
  CHECK(n2 == (C(1) - V(Var::T)) * (C(1) - V(Var::T)) + V(Var::T));

  // Degree-3 parity bookkeeping: q = x^3: q(it) = -i t^3 * ... : E = 0, O = -T
  auto [E3, O3] = imaginary_axis_split(V(Var::x).pow(3), Var::x, Var::T);
  CHECK(E3 == MultiPoly());
  CHECK(O3 == -V(Var::T));
}

TEST_CASE("squared modulus matches direct complex evaluation") {
  std::mt19937 rng(999);
  for (int trial = 0; trial < 25; ++trial) {
    MultiPoly p = random_poly(rng, {Var::x}, 5, 5);
    MultiPoly n2 = imaginary_axis_norm2(p, Var::x, Var::T);
    Rat t = rat((trial % 7) + 1, (trial % 4) + 2);
    CRat val = p.eval_complex({{Var::x, CRat(Rat(0), t)}});
    CHECK(n2.eval({{Var::T, t * t}}) == val.norm2());
  }
}

TEST_CASE("rational expression text round-trip") {
  RationalExpr e(V(Var::x) + C(1), V(Var::n) * V(Var::n) + C(7));
  std::string s = e.to_string();
  CHECK(s == "(1 * x + 1) / (1 * n^2 + 7)");
  RationalExpr back = RationalExpr::parse(s);
  CHECK(back == e);
  CHECK(RationalExpr::parse("3/2") == RationalExpr(rat(3, 2)));
  CHECK_THROWS_AS(RationalExpr::parse("(1 * x) / (0)"), EngineError);
}

TEST_CASE("substitution of rational expressions") {
  // Moebius-style substitution z -> z / (2 - z) into 1/z gives (2 - z)/z.
  RationalExpr inv_z = RationalExpr(rat(1)) / RationalExpr::variable(Var::z);
  RationalExpr moeb(V(Var::z), C(2) - V(Var::z));
  RationalExpr composed = inv_z.substitute(Var::z, moeb);
  CHECK(composed == RationalExpr(C(2) - V(Var::z), V(Var::z)));

  // Polynomial substitution with denominator clearing: (z^2 + 1) at z -> 1/z.
  RationalExpr p(V(Var::z) * V(Var::z) + C(1));
  RationalExpr sub = p.substitute(Var::z, RationalExpr(C(1), V(Var::z)));
  CHECK(sub == RationalExpr(C(1) + V(Var::z) * V(Var::z), V(Var::z) * V(Var::z)));
}

TEST_CASE("evaluation agrees between exact and complex paths") {
  MultiPoly p = V(Var::n).pow(2) * V(Var::x) - C(3) * V(Var::x) + C(1, 3);
  std::map<Var, Rat> pt{{Var::n, rat(2)}, {Var::x, rat(-1, 2)}};
  CHECK(p.eval(pt) == rat(1, 3) - rat(1, 2) * 4 + rat(3, 2));
  std::map<Var, CRat> cpt{{Var::n, CRat(rat(2))}, {Var::x, CRat(rat(-1, 2))}};
  CHECK(p.eval_complex(cpt).re == p.eval(pt));
  CHECK(p.eval_complex(cpt).im == 0);
}
