#include "modecert/standardform.hpp"

#include "modecert/poly_algorithms.hpp"

namespace modecert {

namespace {

RationalExpr zvar() { return RationalExpr::variable(Var::z); }

// p == even + r * odd with both parts even in r
void split_parity(const MultiPoly& p, MultiPoly* even_part, MultiPoly* odd_part) {
  MultiPoly e(Rat(0)), o(Rat(0));
  for (const auto& [exps, coeff] : p.terms()) {
    Exponents ex = exps;
    int k = ex[static_cast<int>(Var::r)];
    if (k % 2 == 0) {
      e = e + MultiPoly::monomial(coeff, ex);
    } else {
      ex[static_cast<int>(Var::r)] = k - 1;
      o = o + MultiPoly::monomial(coeff, ex);
    }
  }
  *even_part = e;
  *odd_part = o;
}

MultiPoly even_poly_to_z(const MultiPoly& p) {
  MultiPoly out(Rat(0));
  for (const auto& [exps, coeff] : p.terms()) {
    Exponents ex = exps;
    int k = ex[static_cast<int>(Var::r)];
    if (k % 2 != 0) raise(ErrorCode::InternalError, "odd exponent after parity split");
    if (ex[static_cast<int>(Var::z)] != 0) {
      raise(ErrorCode::InternalError, "target variable already present before substitution");
    }
    ex[static_cast<int>(Var::r)] = 0;
    ex[static_cast<int>(Var::z)] = k / 2;
    out = out + MultiPoly::monomial(coeff, ex);
  }
  return out;
}

// Rewrites an even-in-r rational function as a function of z = r^2.
RationalExpr even_to_z(const RationalExpr& f) {
  MultiPoly de(Rat(0)), dodd(Rat(0));
  split_parity(f.den(), &de, &dodd);
  MultiPoly r = MultiPoly::variable(Var::r);
  MultiPoly num2 = f.num() * (de - r * dodd);
  MultiPoly den2 = de * de - r * r * dodd * dodd;
  MultiPoly ne(Rat(0)), nodd(Rat(0));
  split_parity(num2, &ne, &nodd);
  if (!nodd.is_zero()) {
    raise(ErrorCode::NonRationalInput, "coefficient is not even in the radial variable");
  }
  return RationalExpr(even_poly_to_z(ne), even_poly_to_z(den2));
}

// evaluates a spectral-parameter expression at 0 (it must be otherwise constant)
Rat exponent_at_spectral_zero(const RationalExpr& e) {
  RationalExpr v = e.substitute(Var::x, RationalExpr(Rat(0))).reduce();
  if (!v.is_constant()) {
    raise(ErrorCode::InternalError, "local exponent depends on more than the spectral parameter");
  }
  return v.constant_value();
}

RationalExpr value_at(const RationalExpr& f, const Rat& point) {
  return f.substitute(Var::z, RationalExpr(point)).reduce();
}

// common tail: partial fractions of P, linear numerator of Q, exponents at
// infinity
HeunForm assemble_heun(const ModeODE& fin, const RationalExpr& e0, const RationalExpr& e2) {
  RationalExpr z = zvar();
  RationalExpr one(Rat(1));
  RationalExpr two(Rat(2));

  HeunForm h;
  h.e0 = e0;
  h.e2 = e2;
  h.equation = fin;

  h.gamma = value_at((z * fin.P).reduce(), Rat(0));
  h.delta = value_at(((z - one) * fin.P).reduce(), Rat(1));
  h.epsilon = value_at(((z - two) * fin.P).reduce(), Rat(2));
  RationalExpr rebuilt = h.gamma / z + h.delta / (z - one) + h.epsilon / (z - two);
  if (!(fin.P - rebuilt).reduce().is_zero()) {
    raise(ErrorCode::TableMismatch, "first-order coefficient is not in three-pole form");
  }

  RationalExpr qnum = (fin.Q * z * (z - one) * (z - two)).reduce();
  if (!qnum.is_polynomial()) {
    raise(ErrorCode::TableMismatch, "second-order coefficient has poles outside {0, 1, 2}");
  }
  MultiPoly qpoly = qnum.polynomial();
  if (qpoly.degree(Var::z) > 1) {
    raise(ErrorCode::TableMismatch, "second-order coefficient numerator is not linear");
  }
  RationalExpr ab(qpoly.coefficient(Var::z, 1));
  h.q = RationalExpr(Rat(0)) - RationalExpr(qpoly.coefficient(Var::z, 0));

  // exponents at infinity: roots of s^2 - (gamma+delta+epsilon-1) s + alpha beta
  RationalExpr s = (h.gamma + h.delta + h.epsilon - one).reduce();
  RationalExpr disc = (s * s - RationalExpr(Rat(4)) * ab).reduce();
  RationalExpr root =
      RationalExpr(poly_sqrt_exact(disc.num())) / RationalExpr(poly_sqrt_exact(disc.den()));
  h.alpha = ((s - root) / two).reduce();
  h.beta = ((s + root) / two).reduce();
  // the root is normalised with positive leading sign; a constant root fixes
  // the order outright, otherwise order by the value at spectral parameter 0
  bool swap_branches = root.is_constant()
                           ? root.constant_value() < 0
                           : exponent_at_spectral_zero(h.alpha) > exponent_at_spectral_zero(h.beta);
  if (swap_branches) std::swap(h.alpha, h.beta);
  if (!(h.alpha * h.beta).equals(ab)) {
    raise(ErrorCode::InternalError, "exponent product mismatch at infinity");
  }
  return h;
}

HeunForm heun_from_equation(const ModeODE& base) {
  ModeODE zf = square_variable(base);
  auto [e0, e0_other] = frobenius_indices(zf, Rat(0), Var::z);
  (void)e0_other;  // the plus branch is the nonnegative local exponent
  ModeODE mz = mobius_two_over(zf);
  auto [i2p, i2m] = frobenius_indices(mz, Rat(2), Var::z);
  // pick the branch with the smaller value at spectral parameter 0; a constant
  // branch difference (the normalised square root) decides without evaluation
  RationalExpr diff = (i2p - i2m).reduce();
  RationalExpr e2;
  if (diff.is_constant()) {
    e2 = diff.constant_value() >= 0 ? i2m : i2p;
  } else {
    e2 = exponent_at_spectral_zero(i2p) < exponent_at_spectral_zero(i2m) ? i2p : i2m;
  }
  ModeODE fin = conjugate_exponents(mz, e0, e2);
  return assemble_heun(fin, e0, e2);
}

}  // namespace

ModeODE square_variable(const ModeODE& eq) {
  RationalExpr r = RationalExpr::variable(Var::r);
  RationalExpr two(Rat(2));
  RationalExpr four(Rat(4));
  RationalExpr p2 = (two + two * r * eq.P) / (four * r * r);
  RationalExpr q2 = eq.Q / (four * r * r);
  ModeODE out;
  out.P = even_to_z(p2.reduce());
  out.Q = even_to_z(q2.reduce());
  return out;
}

ModeODE mobius_two_over(const ModeODE& eq) {
  RationalExpr z = zvar();
  RationalExpr eta = z / (RationalExpr(Rat(2)) - z);
  RationalExpr etap = eta.derivative(Var::z);
  RationalExpr etapp = etap.derivative(Var::z);
  ModeODE out;
  out.P = (etap * eq.P.substitute(Var::z, eta) - etapp / etap).reduce();
  out.Q = (etap * etap * eq.Q.substitute(Var::z, eta)).reduce();
  return out;
}

ModeODE conjugate_exponents(const ModeODE& eq, const RationalExpr& e0, const RationalExpr& e2) {
  RationalExpr z = zvar();
  RationalExpr lh = e0 / z - e2 / (RationalExpr(Rat(2)) - z);  // h'/h
  ModeODE out;
  out.P = (eq.P + RationalExpr(Rat(2)) * lh).reduce();
  out.Q = (eq.Q + eq.P * lh + lh.derivative(Var::z) + lh * lh).reduce();
  return out;
}

HypergeomForm hypergeometric_form() {
  RationalExpr x = RationalExpr::variable(Var::x);
  ModeODE base = mode_ode(x, 0, 1, /*transformed=*/true);
  ModeODE zf = square_variable(base);
  auto [e0, e0_other] = frobenius_indices(zf, Rat(0), Var::z);
  (void)e0_other;
  ModeODE red = conjugate_exponents(zf, e0, RationalExpr(Rat(0)));

  RationalExpr z = zvar();
  RationalExpr one(Rat(1));
  RationalExpr two(Rat(2));
  RationalExpr pnum = (red.P * z * (one - z)).reduce();
  RationalExpr qnum = (red.Q * z * (one - z)).reduce();
  if (!pnum.is_polynomial() || !qnum.is_polynomial()) {
    raise(ErrorCode::TableMismatch, "reduced equation is not of two-point rigid type");
  }
  MultiPoly pp = pnum.polynomial();
  if (pp.degree(Var::z) > 1) {
    raise(ErrorCode::TableMismatch, "first-order coefficient numerator is not linear");
  }
  MultiPoly qq = qnum.polynomial();
  if (qq.degree(Var::z) > 0) {
    raise(ErrorCode::TableMismatch, "second-order coefficient is not constant");
  }

  HypergeomForm h;
  h.equation = red;
  h.c = RationalExpr(pp.coefficient(Var::z, 0));
  RationalExpr s = RationalExpr(Rat(0)) - RationalExpr(pp.coefficient(Var::z, 1)) - one;
  RationalExpr prod = RationalExpr(Rat(0)) - RationalExpr(qq);
  RationalExpr disc = (s * s - RationalExpr(Rat(4)) * prod).reduce();
  RationalExpr root =
      RationalExpr(poly_sqrt_exact(disc.num())) / RationalExpr(poly_sqrt_exact(disc.den()));
  h.a = ((s + root) / two).reduce();
  h.b = ((s - root) / two).reduce();
  if (exponent_at_spectral_zero(h.a) < exponent_at_spectral_zero(h.b)) std::swap(h.a, h.b);
  if (!(h.a * h.b).equals(prod)) {
    raise(ErrorCode::InternalError, "exponent product mismatch at infinity");
  }
  return h;
}

HeunForm heun_form(int l, int m) {
  if (l < 1) raise(ErrorCode::UnsupportedCase, "rigid reduction needs l >= 1");
  if (!valid_block(l, m)) raise(ErrorCode::InvalidIndex, "invalid angular block");
  bool transformed = (l == 1 && m == 0) || (l == 1 && m == 1) || (l == 2 && m == 1);
  RationalExpr x = RationalExpr::variable(Var::x);
  return heun_from_equation(mode_ode(x, l, m, transformed));
}

HeunForm heun_form_family(int offset) {
  RationalExpr x = RationalExpr::variable(Var::x);
  return heun_from_equation(mode_ode_family(x, offset));
}

}  // namespace modecert
