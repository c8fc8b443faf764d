#include "modecert/poly_algorithms.hpp"

#include <algorithm>

namespace modecert {

MultiPoly poly_shift(const MultiPoly& p, Var v, const Rat& offset) {
  return p.substitute(v, MultiPoly::variable(v) + offset);
}

std::pair<RationalExpr, MultiPoly> poly_divmod(const MultiPoly& num, const MultiPoly& den, Var v) {
  if (den.is_zero()) raise(ErrorCode::DivisionByZeroPoly, "poly_divmod by zero polynomial");
  const int dd = den.degree(v);
  MultiPoly lead = den.coefficient(v, dd);
  if (!lead.is_constant()) {
    raise(ErrorCode::NonRationalInput,
          "poly_divmod requires a constant leading coefficient in the division variable");
  }
  const Rat lc = lead.constant_value();
  MultiPoly quotient;
  MultiPoly rem = num;
  while (!rem.is_zero() && rem.degree(v) >= dd) {
    const int dr = rem.degree(v);
    MultiPoly c = rem.coefficient(v, dr);
    Exponents mono = kZeroExponents;
    mono[static_cast<int>(v)] = dr - dd;
    MultiPoly term = c * MultiPoly::monomial(Rat(1) / lc, mono);
    quotient += term;
    rem -= term * den;
  }
  return {RationalExpr(quotient), rem};
}

MultiPoly poly_exact_div(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) raise(ErrorCode::DivisionByZeroPoly, "exact division by zero polynomial");
  MultiPoly rem = a;
  MultiPoly quotient;
  const auto& lead_b = *b.terms().begin();
  while (!rem.is_zero()) {
    const auto& lead_r = *rem.terms().begin();
    Exponents diff;
    for (int i = 0; i < kVarCount; ++i) {
      diff[i] = lead_r.first[i] - lead_b.first[i];
      if (diff[i] < 0) {
        raise(ErrorCode::InternalError, "poly_exact_div: divisor does not divide dividend");
      }
    }
    MultiPoly term = MultiPoly::monomial(lead_r.second / lead_b.second, diff);
    quotient += term;
    rem -= term * b;
  }
  return quotient;
}

namespace {

// Content of p with respect to v: gcd of the coefficient polynomials.
MultiPoly content_wrt(const MultiPoly& p, Var v) {
  MultiPoly g;
  for (const auto& [k, coeff] : p.coefficients(v)) {
    g = poly_gcd(g, coeff);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

// lc(B)^k * A mod B in variable v, computed fraction-free.
MultiPoly pseudo_rem(const MultiPoly& A, const MultiPoly& B, Var v) {
  const int db = B.degree(v);
  MultiPoly lcB = B.coefficient(v, db);
  MultiPoly R = A;
  while (!R.is_zero() && R.degree(v) >= db) {
    const int dr = R.degree(v);
    MultiPoly lcR = R.coefficient(v, dr);
    Exponents mono = kZeroExponents;
    mono[static_cast<int>(v)] = dr - db;
    R = lcB * R - MultiPoly::monomial(Rat(1), mono) * lcR * B;
  }
  return R;
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.is_zero() ? MultiPoly() : b.primitive_part();
  if (b.is_zero()) return a.primitive_part();

  MultiPoly A = a.primitive_part();
  MultiPoly B = b.primitive_part();

  // Choose the highest-index variable present as the main variable.
  Var v{};
  bool found = false;
  for (int i = kVarCount - 1; i >= 0; --i) {
    if (A.contains(static_cast<Var>(i)) || B.contains(static_cast<Var>(i))) {
      v = static_cast<Var>(i);
      found = true;
      break;
    }
  }
  if (!found) return MultiPoly(Rat(1));  // both nonzero constants

  MultiPoly contA = content_wrt(A, v);
  MultiPoly contB = content_wrt(B, v);
  MultiPoly cont_gcd = poly_gcd(contA, contB);

  A = poly_exact_div(A, contA);
  B = poly_exact_div(B, contB);
  if (A.degree(v) < B.degree(v)) std::swap(A, B);

  while (!B.is_zero()) {
    MultiPoly R = pseudo_rem(A, B, v);
    A = std::move(B);
    if (R.is_zero()) {
      B = MultiPoly();
    } else {
      R = R.primitive_part();
      MultiPoly cr = content_wrt(R, v);
      if (!cr.is_constant()) R = poly_exact_div(R, cr);
      B = std::move(R);
    }
  }
  return (cont_gcd * A).primitive_part();
}

MultiPoly poly_sqrt_exact(const MultiPoly& p) {
  if (p.is_zero()) return MultiPoly();
  if (p.is_constant()) return MultiPoly(rat_sqrt_exact(p.constant_value()));
  std::vector<Var> vars = p.variables();
  if (vars.size() != 1) {
    raise(ErrorCode::NonRationalInput, "polynomial square root supported univariate only");
  }
  Var v = vars[0];
  const int d2 = p.degree(v);
  if (d2 % 2 != 0) raise(ErrorCode::NonRationalInput, "odd degree is not a perfect square");
  const int d = d2 / 2;
  std::vector<Rat> c(static_cast<std::size_t>(d2) + 1, Rat(0));
  for (const auto& [k, coeff] : p.coefficients(v)) c[k] = coeff.constant_value();
  std::vector<Rat> q(static_cast<std::size_t>(d) + 1, Rat(0));
  q[d] = rat_sqrt_exact(c[d2]);
  for (int j = d - 1; j >= 0; --j) {
    Rat acc = c[d + j];
    for (int i = j + 1; i <= d; ++i) {
      int k = d + j - i;
      if (k > d || k <= j) continue;
      acc -= q[i] * q[k];
    }
    q[j] = acc / (2 * q[d]);
  }
  MultiPoly root;
  for (int k = 0; k <= d; ++k) {
    Exponents e = kZeroExponents;
    e[static_cast<int>(v)] = k;
    root += MultiPoly::monomial(q[k], e);
  }
  if (root * root != p) raise(ErrorCode::NonRationalInput, "polynomial is not a perfect square");
  return root;
}

// ---- univariate sign certificates -------------------------------------------

namespace {

void require_univariate(const MultiPoly& p, Var v, const char* op) {
  for (Var w : p.variables()) {
    if (w != v) {
      raise(ErrorCode::NonRationalInput,
            std::string(op) + ": polynomial must be univariate in the given variable");
    }
  }
}

std::vector<Rat> dense_coefficients(const MultiPoly& p, Var v) {
  std::vector<Rat> out(static_cast<std::size_t>(std::max(p.degree(v), 0)) + 1, Rat(0));
  if (p.is_zero()) return out;
  for (const auto& [k, coeff] : p.coefficients(v)) out[k] = coeff.constant_value();
  return out;
}

}  // namespace

Certificate nonpositive_on_halfline(const MultiPoly& p, Var v, const Rat& start, bool strict) {
  require_univariate(p, v, "nonpositive_on_halfline");
  Certificate cert;
  cert.kind = CertKind::ShiftSign;
  cert.note("variable", var_name(v));
  cert.note("start", rat_to_string(start));
  cert.note("strict", strict ? "true" : "false");
  MultiPoly shifted = poly_shift(p, v, start);
  cert.poly_witnesses.push_back(shifted);
  cert.shifted_coefficients = dense_coefficients(shifted, v);
  cert.pass = true;
  for (std::size_t k = 0; k < cert.shifted_coefficients.size(); ++k) {
    if (cert.shifted_coefficients[k] > 0) {
      cert.pass = false;
      cert.failure_reason = "coefficient of degree " + std::to_string(k) +
                            " is positive after shift: " +
                            rat_to_string(cert.shifted_coefficients[k]);
      return cert;
    }
  }
  if (strict && !(cert.shifted_coefficients[0] < 0)) {
    cert.pass = false;
    cert.failure_reason = "strict negativity requires a negative constant term after shift";
  }
  return cert;
}

namespace {

// Dense univariate helpers for Sturm chains.
using Dense = std::vector<Rat>;

Dense to_dense(const MultiPoly& p, Var v) { return dense_coefficients(p, v); }

void dense_trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Rat dense_eval(const Dense& p, const Rat& t) {
  Rat acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
  return acc;
}

Dense dense_derivative(const Dense& p) {
  Dense out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * Rat(static_cast<long>(i)));
  dense_trim(out);
  return out;
}

// Remainder of a by b; divides by positive scalar content only (sign kept).
Dense dense_rem(Dense a, const Dense& b) {
  dense_trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat factor = a.back() / b.back();
    std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= factor * b[i];
    dense_trim(a);
  }
  return a;
}

void dense_positive_scale(Dense& p) {
  Rat big(0);
  for (const Rat& c : p) big = std::max(big, rat_abs(c));
  if (big == 0) return;
  for (Rat& c : p) c /= big;
}

std::vector<Dense> sturm_chain(const Dense& p) {
  std::vector<Dense> chain;
  Dense a = p;
  dense_trim(a);
  if (a.empty()) return chain;
  chain.push_back(a);
  Dense b = dense_derivative(a);
  while (!b.empty()) {
    chain.push_back(b);
    Dense r = dense_rem(chain[chain.size() - 2], b);
    for (Rat& c : r) c = -c;
    dense_positive_scale(r);
    b = std::move(r);
  }
  return chain;
}

int sign_changes(const std::vector<Dense>& chain, const Rat& t) {
  int changes = 0;
  int prev = 0;
  for (const Dense& p : chain) {
    int s = sign(dense_eval(p, t));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

Dense square_free_part(const Dense& p) {
  // p / gcd(p, p'); the last nonzero element of the Euclidean chain is the gcd.
  Dense a = p;
  dense_trim(a);
  if (a.size() <= 1) return a;
  Dense b = dense_derivative(a);
  Dense g = a;
  while (!b.empty()) {
    Dense r = dense_rem(g, b);
    dense_positive_scale(r);
    g = std::move(b);
    b = std::move(r);
  }
  // Divide a by g exactly.
  Dense q;
  Dense rem = a;
  dense_trim(rem);
  q.assign(rem.size() - g.size() + 1, Rat(0));
  while (rem.size() >= g.size() && !rem.empty()) {
    Rat factor = rem.back() / g.back();
    std::size_t off = rem.size() - g.size();
    q[off] = factor;
    for (std::size_t i = 0; i < g.size(); ++i) rem[off + i] -= factor * g[i];
    dense_trim(rem);
  }
  dense_trim(q);
  return q;
}

}  // namespace

int sturm_root_count(const MultiPoly& p, Var v, const Rat& lo, const Rat& hi) {
  require_univariate(p, v, "sturm_root_count");
  Dense d = to_dense(p, v);
  dense_trim(d);
  if (d.size() <= 1) return 0;  // constants have no roots
  Dense sf = square_free_part(d);
  if (dense_eval(sf, lo) == 0) {
    raise(ErrorCode::InternalError, "sturm_root_count requires p(lo) != 0");
  }
  auto chain = sturm_chain(sf);
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

Certificate sturm_sign_on_interval(const MultiPoly& p, Var v, const Rat& lo, const Rat& hi) {
  require_univariate(p, v, "sturm_sign_on_interval");
  Certificate cert;
  cert.kind = CertKind::SturmInterval;
  cert.note("variable", var_name(v));
  cert.note("lo", rat_to_string(lo));
  cert.note("hi", rat_to_string(hi));
  if (lo > hi) raise(ErrorCode::InternalError, "sturm_sign_on_interval: lo > hi");

  std::map<Var, Rat> at_lo{{v, lo}}, at_hi{{v, hi}};
  Rat plo = p.eval(at_lo);
  Rat phi = p.eval(at_hi);
  cert.note("p(lo)", rat_to_string(plo));
  cert.note("p(hi)", rat_to_string(phi));
  if (plo == 0 || phi == 0) {
    cert.pass = false;
    cert.failure_reason = "polynomial vanishes at an interval endpoint";
    return cert;
  }
  int count = sturm_root_count(p, v, lo, hi);
  cert.note("roots_in_interval", std::to_string(count));
  if (count != 0) {
    cert.pass = false;
    cert.failure_reason = "polynomial has a root inside the interval";
    return cert;
  }
  if (!(plo < 0)) {
    cert.pass = false;
    cert.failure_reason = "polynomial is positive on the interval";
    return cert;
  }
  cert.pass = true;
  return cert;
}

Certificate orthant_sign(const MultiPoly& p, const std::map<Var, Rat>& shifts, int target_sign,
                         bool strict) {
  Certificate cert;
  cert.kind = CertKind::ShiftSign;
  cert.note("target_sign", target_sign > 0 ? "+1" : "-1");
  cert.note("strict", strict ? "true" : "false");
  for (Var v : p.variables()) {
    if (shifts.find(v) == shifts.end()) {
      raise(ErrorCode::InternalError,
            std::string("orthant_sign: unshifted variable ") + var_name(v));
    }
  }
  MultiPoly shifted = p;
  for (const auto& [v, off] : shifts) {
    cert.note(std::string("shift.") + var_name(v), rat_to_string(off));
    shifted = poly_shift(shifted, v, off);
  }
  cert.poly_witnesses.push_back(shifted);
  cert.pass = true;
  if (shifted.is_zero()) {
    if (strict) {
      cert.pass = false;
      cert.failure_reason = "zero polynomial cannot be strictly signed";
    }
    return cert;
  }
  for (const auto& [e, c] : shifted.terms()) {
    if (sign(c) != target_sign) {
      cert.pass = false;
      cert.failure_reason = "coefficient with wrong sign after shift: " + rat_to_string(c);
      return cert;
    }
  }
  if (strict) {
    auto it = shifted.terms().find(kZeroExponents);
    if (it == shifted.terms().end()) {
      cert.pass = false;
      cert.failure_reason = "strict sign requires a nonzero constant term after shift";
    }
  }
  return cert;
}

std::pair<MultiPoly, MultiPoly> imaginary_axis_split(const MultiPoly& p, Var vx, Var vT) {
  if (p.contains(vT)) {
    raise(ErrorCode::InternalError, "imaginary_axis_split: polynomial already uses target variable");
  }
  MultiPoly E, O;
  for (const auto& [k, coeff] : p.coefficients(vx)) {
    Exponents mono = kZeroExponents;
    mono[static_cast<int>(vT)] = k / 2;
    int parity_sign = (k / 2) % 2 == 0 ? 1 : -1;
    MultiPoly term = coeff * MultiPoly::monomial(Rat(parity_sign), mono);
    if (k % 2 == 0) {
      E += term;
    } else {
      O += term;
    }
  }
  return {E, O};
}

MultiPoly imaginary_axis_norm2(const MultiPoly& p, Var vx, Var vT) {
  auto [E, O] = imaginary_axis_split(p, vx, vT);
  return E * E + MultiPoly::variable(vT) * O * O;
}

}  // namespace modecert
