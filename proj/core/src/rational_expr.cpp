#include "modecert/rational_expr.hpp"

#include "modecert/poly_algorithms.hpp"

namespace modecert {

RationalExpr::RationalExpr(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalExpr::normalize() {
  if (den_.is_zero()) raise(ErrorCode::DivisionByZeroPoly, "zero denominator");
  if (num_.is_zero()) {
    den_ = MultiPoly(Rat(1));
    return;
  }
  int s = 1;
  Rat c = den_.content();
  den_ = den_.primitive_part(&s);
  num_ *= Rat(s) / c;
}

MultiPoly RationalExpr::polynomial() const {
  if (!is_polynomial()) raise(ErrorCode::InternalError, "polynomial() on true quotient");
  MultiPoly out = num_;
  out *= Rat(1) / den_.constant_value();
  return out;
}

Rat RationalExpr::constant_value() const {
  if (!is_constant()) raise(ErrorCode::InternalError, "constant_value on non-constant expression");
  if (num_.is_zero()) return Rat(0);
  return num_.constant_value() / den_.constant_value();
}

RationalExpr RationalExpr::operator-() const {
  RationalExpr out = *this;
  out.num_ = -out.num_;
  return out;
}

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
  return RationalExpr(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) {
  return RationalExpr(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
  return RationalExpr(a.num_ * b.num_, a.den_ * b.den_);
}

RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) {
  if (b.num_.is_zero()) raise(ErrorCode::DivisionByZeroPoly, "division by zero expression");
  return RationalExpr(a.num_ * b.den_, a.den_ * b.num_);
}

bool RationalExpr::equals(const RationalExpr& o) const {
  return num_ * o.den_ == o.num_ * den_;
}

RationalExpr RationalExpr::derivative(Var v) const {
  MultiPoly dn = num_.derivative(v);
  MultiPoly dd = den_.derivative(v);
  if (dd.is_zero()) return RationalExpr(dn, den_);
  return RationalExpr(dn * den_ - num_ * dd, den_ * den_);
}

namespace {

// p(v -> N/D) as a rational expression, via homogenisation with D^deg.
RationalExpr substitute_poly(const MultiPoly& p, Var v, const RationalExpr& value) {
  if (!p.contains(v)) return RationalExpr(p);
  int d = p.degree(v);
  const MultiPoly& N = value.num();
  const MultiPoly& D = value.den();
  std::vector<MultiPoly> npow(static_cast<std::size_t>(d) + 1), dpow(static_cast<std::size_t>(d) + 1);
  npow[0] = MultiPoly(Rat(1));
  dpow[0] = MultiPoly(Rat(1));
  for (int k = 1; k <= d; ++k) {
    npow[k] = npow[k - 1] * N;
    dpow[k] = dpow[k - 1] * D;
  }
  MultiPoly acc;
  for (const auto& [k, coeff] : p.coefficients(v)) {
    acc += coeff * npow[k] * dpow[d - k];
  }
  return RationalExpr(acc, dpow[d]);
}

}  // namespace

RationalExpr RationalExpr::substitute(Var v, const RationalExpr& value) const {
  RationalExpr top = substitute_poly(num_, v, value);
  RationalExpr bottom = substitute_poly(den_, v, value);
  return top / bottom;
}

RationalExpr RationalExpr::shift(Var v, const Rat& offset) const {
  MultiPoly target = MultiPoly::variable(v) + offset;
  return RationalExpr(num_.substitute(v, target), den_.substitute(v, target));
}

RationalExpr RationalExpr::reduce() const {
  if (num_.is_zero()) return *this;
  int sn = 1, sd = 1;
  Rat cn = num_.content();
  Rat cd = den_.content();
  MultiPoly pn = num_.primitive_part(&sn);
  MultiPoly pd = den_.primitive_part(&sd);
  MultiPoly g = poly_gcd(pn, pd);
  if (!g.is_constant()) {
    pn = poly_exact_div(pn, g);
    pd = poly_exact_div(pd, g);
  }
  pn *= cn * sn;
  pd *= cd * sd;
  return RationalExpr(std::move(pn), std::move(pd));
}

Rat RationalExpr::eval(const std::map<Var, Rat>& point) const {
  Rat d = den_.eval(point);
  if (d == 0) raise(ErrorCode::DivisionByZeroPoly, "denominator vanishes at evaluation point");
  return num_.eval(point) / d;
}

CRat RationalExpr::eval_complex(const std::map<Var, CRat>& point) const {
  CRat d = den_.eval_complex(point);
  if (d.is_zero()) raise(ErrorCode::DivisionByZeroPoly, "denominator vanishes at evaluation point");
  return num_.eval_complex(point) / d;
}

std::string RationalExpr::to_string() const {
  if (den_ == MultiPoly(Rat(1))) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

RationalExpr RationalExpr::parse(const std::string& raw) {
  std::size_t b = raw.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) raise(ErrorCode::ParseError, "empty expression text");
  std::size_t e = raw.find_last_not_of(" \t\r\n");
  std::string text = raw.substr(b, e - b + 1);

  if (!text.empty() && text.front() == '(') {
    const std::string sep = ") / (";
    std::size_t cut = text.find(sep);
    if (cut == std::string::npos || text.back() != ')') {
      raise(ErrorCode::ParseError, "malformed quotient: " + text);
    }
    std::string num_text = text.substr(1, cut - 1);
    std::string den_text = text.substr(cut + sep.size(), text.size() - cut - sep.size() - 1);
    RationalExpr out(MultiPoly::parse(num_text), MultiPoly::parse(den_text));
    if (out.to_string() != text) raise(ErrorCode::ParseError, "text is not in canonical form: " + text);
    return out;
  }
  return RationalExpr(MultiPoly::parse(text));
}

}  // namespace modecert
