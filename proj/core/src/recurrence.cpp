#include "modecert/recurrence.hpp"

namespace modecert {

namespace {

RationalExpr nvar() { return RationalExpr::variable(Var::n); }
RationalExpr xvar() { return RationalExpr::variable(Var::x); }
RationalExpr cnum(long v) { return RationalExpr(Rat(v)); }

// a n + b
RationalExpr nlin(long a, long b) { return cnum(a) * nvar() + cnum(b); }

// a n^2 + b n + c
RationalExpr nquad(long a, long b, long c) {
  RationalExpr n = nvar();
  return cnum(a) * n * n + cnum(b) * n + cnum(c);
}

// Stored closed forms of the ratio recursion coefficients.  The generic pair
// covers every block without a first-order factorisation; the three special
// pairs belong to the factorised blocks, whose reduction runs through the
// image equation.
struct CoefficientDisplay {
  RationalExpr A;
  RationalExpr B;
};

CoefficientDisplay display_generic(const RationalExpr& l, const RationalExpr& m) {
  RationalExpr n = nvar();
  RationalExpr x = xvar();
  RationalExpr den = cnum(4) * (n + cnum(1)) * (cnum(2) * l + cnum(2) * n + cnum(3));
  RationalExpr num = x * x + cnum(4) * x + l * l +
                     cnum(2) * l * (cnum(2) * x + cnum(6) * n + cnum(1)) +
                     cnum(2) * m * m + cnum(2) * m + nquad(12, 8, -12) + cnum(8) * x * n;
  RationalExpr b_num = (x + l + cnum(2) * n - cnum(4)) * (x + l + cnum(2) * n + cnum(2));
  return {(num / den), (cnum(0) - b_num / den)};
}

CoefficientDisplay display_special(int l, int m) {
  RationalExpr n = nvar();
  RationalExpr x = xvar();
  if (l == 1 && m == 0) {
    RationalExpr a = (x * x + cnum(12) * x + cnum(12) * n * n +
                      cnum(8) * (x + cnum(4)) * n + cnum(12)) /
                     (cnum(4) * nquad(2, 9, 7));
    RationalExpr b = cnum(0) - (x + cnum(2) * n) * (x + cnum(2) * n + cnum(2)) /
                                   (cnum(4) * (n + cnum(1)) * nlin(2, 7));
    return {a, b};
  }
  if (l == 1 && m == 1) {
    RationalExpr a = (x * x + cnum(12) * x + cnum(12) * n * n + cnum(8) * x * n +
                      cnum(28) * n + cnum(7)) /
                     nquad(8, 36, 28);
    RationalExpr b = cnum(0) - (x + cnum(2) * n - cnum(1)) * (x + cnum(2) * n + cnum(1)) /
                                   (cnum(4) * (n + cnum(1)) * nlin(2, 7));
    return {a, b};
  }
  if (l == 2 && m == 1) {
    RationalExpr a = (x * x + cnum(16) * x + cnum(12) * n * n + cnum(8) * x * n +
                      cnum(44) * n + cnum(27)) /
                     nquad(8, 44, 36);
    RationalExpr b = cnum(0) - (x + cnum(2) * n + cnum(1)) * (x + cnum(2) * n + cnum(3)) /
                                   (cnum(4) * (n + cnum(1)) * nlin(2, 9));
    return {a, b};
  }
  raise(ErrorCode::InternalError, "no special coefficient display for this block");
}

// x^2 / d2 + x * c1 + c0
RationalExpr quasi_row(const RationalExpr& d2, const RationalExpr& c1, const RationalExpr& c0) {
  RationalExpr x = xvar();
  return x * x / d2 + x * c1 + c0;
}

RationalExpr quasi_family(int offset) {
  RationalExpr n = nvar();
  RationalExpr l = RationalExpr::variable(Var::l);
  RationalExpr d2 = l * nlin(8, 8) + nquad(8, 20, 12);
  RationalExpr c1 = (l + nlin(2, 1)) / (l * nlin(2, 2) + nquad(2, 5, 3));
  RationalExpr tail;
  switch (offset) {
    case -1:
      tail = cnum(3) * (l - cnum(3)) / nlin(8, 8) + nlin(6, 11) / nlin(6, 20);
      break;
    case 0:
      tail = cnum(3) * (l - cnum(2)) / nlin(8, 8) + nlin(1, 4) / nlin(1, 6);
      break;
    case 1:
      tail = cnum(3) * (l - cnum(1)) / nlin(8, 8) + nlin(2, 11) / nlin(2, 15);
      break;
    default:
      raise(ErrorCode::InvalidIndex, "family offset outside {-1, 0, 1}");
  }
  return quasi_row(d2, c1, tail);
}

Rat limit_at_large_n(const RationalExpr& f0) {
  RationalExpr f = f0.reduce();
  int dn = f.num().degree(Var::n);
  int dd = f.den().degree(Var::n);
  if (dn < dd) return Rat(0);
  if (dn > dd) raise(ErrorCode::NonRationalInput, "coefficient diverges with the index");
  MultiPoly top = f.num().coefficient(Var::n, dn);
  MultiPoly bottom = f.den().coefficient(Var::n, dd);
  if (!top.is_constant() || !bottom.is_constant()) {
    raise(ErrorCode::NonRationalInput, "leading behaviour depends on other symbols");
  }
  return top.constant_value() / bottom.constant_value();
}

void require_no_family_degree(const RatioRecurrence& rec) {
  if (rec.A.contains(Var::l) || rec.B.contains(Var::l) || rec.r0.contains(Var::l)) {
    raise(ErrorCode::InternalError, "family degree must be substituted before iteration");
  }
}

}  // namespace

RatioRecurrence ratio_recurrence(const HeunForm& h) {
  RationalExpr n = nvar();
  RationalExpr one(Rat(1));
  RationalExpr r_n = cnum(2) * (n + one) * (h.gamma + n);
  RationalExpr p_n = (n - one + h.alpha) * (n - one + h.beta);
  RationalExpr q_n = n * (cnum(3) * (n - one + h.gamma) + cnum(2) * h.delta + h.epsilon);
  RatioRecurrence rec;
  rec.A = ((q_n + h.q) / r_n).reduce();
  rec.B = (cnum(0) - p_n / r_n).reduce();
  rec.r0 = (h.q / (cnum(2) * h.gamma)).reduce();
  return rec;
}

RatioRecurrence ratio_recurrence_case(const CaseKey& key) {
  HeunForm h;
  CoefficientDisplay display;
  if (key.is_family()) {
    h = heun_form_family(key.offset);
    RationalExpr l = RationalExpr::variable(Var::l);
    display = display_generic(l, l + cnum(key.offset));
  } else {
    if (key.l == 0) {
      raise(ErrorCode::UnsupportedCase, "two-point block has explicit coefficient ratios");
    }
    h = heun_form(key.l, key.m);
    bool special = (key.l == 1 && key.m == 0) || (key.l == 1 && key.m == 1) ||
                   (key.l == 2 && key.m == 1);
    display = special ? display_special(key.l, key.m)
                      : display_generic(cnum(key.l), cnum(key.m));
  }
  RatioRecurrence rec = ratio_recurrence(h);
  if (!rec.A.equals(display.A) || !rec.B.equals(display.B)) {
    raise(ErrorCode::TableMismatch, "derived ratio coefficients disagree with stored forms");
  }
  return rec;
}

RationalExpr hypergeom_ratio(const HypergeomForm& f) {
  RationalExpr n = nvar();
  RationalExpr one(Rat(1));
  return (((n + f.a) * (n + f.b)) / ((n + one) * (n + f.c))).reduce();
}

RationalExpr quasisolution(const CaseKey& key) {
  if (key.is_family()) return quasi_family(key.offset);
  const int l = key.l, m = key.m;
  if (l == 0) raise(ErrorCode::UnsupportedCase, "two-point block needs no quasisolution");
  if (l == 1 && m == 0) {
    return quasi_row(nquad(8, 36, 28), nlin(2, 3) / nquad(2, 9, 7), nlin(2, 4) / nlin(2, 7));
  }
  if (l == 1 && m == 1) {
    return quasi_row(nquad(8, 36, 28), nlin(2, 3) / nquad(2, 9, 7), nlin(15, 15) / nlin(15, 40));
  }
  if (l == 1 && m == 2) {
    return quasi_row(nquad(8, 28, 20), nlin(2, 2) / nquad(2, 7, 5), nlin(2, 12) / nlin(2, 14));
  }
  if (l == 2 && m == 1) {
    return quasi_row(nquad(8, 44, 36), nlin(2, 4) / nquad(2, 11, 9), nlin(2, 9) / nlin(2, 12));
  }
  if (l == 2 && m == 2) {
    return quasi_row(nquad(8, 36, 28), nlin(2, 3) / nquad(2, 9, 7), nlin(6, 30) / nlin(6, 35));
  }
  if (l == 2 && m == 3) {
    return quasi_row(nquad(8, 36, 28), nlin(2, 3) / nquad(2, 9, 7), nlin(4, 42) / nlin(4, 47));
  }
  if (l == 3 && (m == 2 || m == 3)) {
    // covered by the family rows specialised to the first supported degree
    return quasi_family(m - l).substitute(Var::l, cnum(3)).reduce();
  }
  raise(ErrorCode::UnsupportedCase, "no stored quasisolution for this block");
}

ErrorModel error_model(const RatioRecurrence& rec, const RationalExpr& quasi) {
  RationalExpr prev = quasi.shift(Var::n, Rat(-1));
  RationalExpr prod = (prev * quasi).reduce();
  ErrorModel em;
  em.a = ((rec.A * prev + rec.B) / prod - RationalExpr(Rat(1))).reduce();
  em.b = (RationalExpr(Rat(0)) - rec.B / prod).reduce();
  return em;
}

std::vector<Rat> ratio_iterates(const RatioRecurrence& rec, const Rat& lambda, int count) {
  require_no_family_degree(rec);
  std::vector<Rat> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  std::map<Var, Rat> pt{{Var::x, lambda}};
  out.push_back(rec.r0.eval(pt));
  for (int k = 1; k < count; ++k) {
    if (out.back() == 0) raise(ErrorCode::RatioBreakdown, "ratio vanished during iteration");
    pt[Var::n] = Rat(k);
    out.push_back(rec.A.eval(pt) + rec.B.eval(pt) / out.back());
  }
  return out;
}

std::vector<CRat> ratio_iterates_complex(const RatioRecurrence& rec, const CRat& lambda,
                                         int count) {
  require_no_family_degree(rec);
  std::vector<CRat> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  std::map<Var, CRat> pt{{Var::x, lambda}};
  out.push_back(rec.r0.eval_complex(pt));
  for (int k = 1; k < count; ++k) {
    if (out.back().is_zero()) raise(ErrorCode::RatioBreakdown, "ratio vanished during iteration");
    pt[Var::n] = CRat(Rat(k));
    out.push_back(rec.A.eval_complex(pt) + rec.B.eval_complex(pt) / out.back());
  }
  return out;
}

std::pair<Rat, Rat> poincare_limits(const RatioRecurrence& rec) {
  return {limit_at_large_n(rec.A), limit_at_large_n(rec.B)};
}

std::pair<Rat, Rat> characteristic_roots(const RatioRecurrence& rec) {
  auto [ainf, binf] = poincare_limits(rec);
  Rat disc = ainf * ainf + Rat(4) * binf;
  Rat root = rat_sqrt_exact(disc);
  return {(ainf + root) / Rat(2), (ainf - root) / Rat(2)};
}

}  // namespace modecert
