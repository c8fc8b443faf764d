#include "modecert/odesystem.hpp"

#include <map>
#include <mutex>

#include "modecert/poly_algorithms.hpp"

namespace modecert {

namespace {

RationalExpr rvar() { return RationalExpr(MultiPoly::variable(Var::r)); }

RationalExpr rpoly(long c0, long c2, long c4) {
  // c4 r^4 + c2 r^2 + c0 as a rational expression
  MultiPoly r = MultiPoly::variable(Var::r);
  MultiPoly p = MultiPoly(Rat(c4)) * r.pow(4) + MultiPoly(Rat(c2)) * r.pow(2) + MultiPoly(Rat(c0));
  return RationalExpr(p);
}

// r^2 (1 + r^2)^2
MultiPoly potential_denominator() {
  MultiPoly r = MultiPoly::variable(Var::r);
  MultiPoly one_r2 = MultiPoly(Rat(1)) + r.pow(2);
  return r.pow(2) * one_r2 * one_r2;
}

RationalExpr one_minus_r2() {
  MultiPoly r = MultiPoly::variable(Var::r);
  return RationalExpr(MultiPoly(Rat(1)) - r.pow(2));
}

// First-order coefficient 2/r - 2(lambda + 1) r of the mode equation.
RationalExpr first_order_coefficient(const RationalExpr& lambda) {
  RationalExpr r = rvar();
  RationalExpr two(Rat(2));
  return two / r - two * (lambda + RationalExpr(Rat(1))) * r;
}

// ---- factorisation weights -------------------------------------------------

// d/dr log( r (1-r^2)^{lambda0/2} phi ) = 1/r - lambda0 r/(1-r^2) + phi'/phi
RationalExpr single_weight(const RationalExpr& phi, const Rat& lambda0) {
  RationalExpr r = rvar();
  RationalExpr one(Rat(1));
  return one / r - RationalExpr(lambda0) * r / one_minus_r2() + phi.derivative(Var::r) / phi;
}

// Second weight of the two-step block: with u = (d/dr - omega0) applied to
// r (1-r^2)^{1/2} phi1 written as (1-r^2)^{1/2} w, the weight is
// d/dr log( (1-r^2) (1-r^2)^{1/2} w ) = -3r/(1-r^2) + w'/w.
RationalExpr second_weight(const RationalExpr& phi1, const RationalExpr& omega0) {
  RationalExpr r = rvar();
  RationalExpr one(Rat(1));
  RationalExpr w = r * phi1.derivative(Var::r) + (one - r * r / one_minus_r2()) * phi1 -
                   omega0 * r * phi1;
  return RationalExpr(Rat(-3)) * r / one_minus_r2() + w.derivative(Var::r) / w;
}

// ---- image potential -------------------------------------------------------

// A function of the form A phi + B phi' with phi a solution of the mode
// equation, represented by the coefficient pair (A, B).
struct CoeffPair {
  RationalExpr A, B;
};

// Derivative of A phi + B phi', eliminating phi'' through the mode equation
// phi'' = alpha phi + beta phi'.
CoeffPair pair_derivative(const CoeffPair& p, const RationalExpr& alpha,
                          const RationalExpr& beta) {
  return {p.A.derivative(Var::r) + p.B * alpha, p.A + p.B.derivative(Var::r) + p.B * beta};
}

// Applies the mode operator at potential W == 0 to the pair, i.e. computes
// (1-r^2) psi'' + c psi' - (x^2 + x) psi componentwise, and divides by the
// matching psi component: both quotients must agree and equal the image
// potential.
RationalExpr eliminate_potential(const CoeffPair& psi, const RationalExpr& alpha,
                                 const RationalExpr& beta, const RationalExpr& c,
                                 const RationalExpr& x2x) {
  CoeffPair d1 = pair_derivative(psi, alpha, beta);
  CoeffPair d2 = pair_derivative(d1, alpha, beta);
  RationalExpr m = one_minus_r2();
  RationalExpr num_a = m * d2.A + c * d1.A - x2x * psi.A;
  RationalExpr num_b = m * d2.B + c * d1.B - x2x * psi.B;
  RationalExpr wa = (num_a / psi.A).reduce();
  RationalExpr wb = (num_b / psi.B).reduce();
  if (!wa.equals(wb)) {
    raise(ErrorCode::TableMismatch, "image potential differs between the two elimination routes");
  }
  if (wa.contains(Var::x)) {
    raise(ErrorCode::TableMismatch, "image potential depends on the spectral parameter");
  }
  return wa;
}

// Derives the image potential of the block from scratch (symbolic spectral
// parameter, weights taken from the reference data).
RationalExpr derive_transformed_potential(const SusyCase& sc) {
  RationalExpr x(MultiPoly::variable(Var::x));
  RationalExpr one(Rat(1));
  RationalExpr r = rvar();
  RationalExpr m = one_minus_r2();
  RationalExpr v = potential(sc.l, sc.m);
  RationalExpr c = first_order_coefficient(x);
  RationalExpr x2x = x * x + x;
  RationalExpr alpha = (x2x + v) / m;
  RationalExpr beta = RationalExpr(Rat(0)) - c / m;

  if (!sc.two_step) {
    RationalExpr rho = one / r - x * r / m - sc.omega0;
    CoeffPair psi{m * rho, m};
    return eliminate_potential(psi, alpha, beta, c, x2x);
  }
  RationalExpr rho0 = one / r - x * r / m - sc.omega0;
  RationalExpr rho1 = one / r - (x + RationalExpr(Rat(2))) * r / m - sc.omega1;
  CoeffPair u{rho0, one};
  CoeffPair du = pair_derivative(u, alpha, beta);
  CoeffPair psi{m * m * (du.A + rho1 * u.A), m * m * (du.B + rho1 * u.B)};
  return eliminate_potential(psi, alpha, beta, c, x2x);
}

SusyCase make_case_01() {
  SusyCase sc;
  sc.l = 0;
  sc.m = 1;
  sc.two_step = true;
  RationalExpr r = rvar();
  RationalExpr one(Rat(1));
  RationalExpr one_plus = one + r * r;

  sc.lambda0 = Rat(0);
  sc.phi0 = (r * r - RationalExpr(Rat(3))) / one_plus;
  sc.omega0 = rpoly(-3, 6, 1) / (r * rpoly(-3, -2, 1));

  sc.lambda1 = Rat(1);
  sc.phi1 = one / one_plus;
  sc.omega1 = rpoly(6, -9, 1) / (r * one_minus_r2() * (RationalExpr(Rat(3)) - r * r));

  sc.v_plain = RationalExpr(Rat(8)) * (r * r - one) / (one_plus * one_plus);
  sc.v_transformed = RationalExpr(Rat(6)) / (r * r);
  return sc;
}

SusyCase make_case_10() {
  SusyCase sc;
  sc.l = 1;
  sc.m = 0;
  RationalExpr r = rvar();
  RationalExpr one(Rat(1));
  RationalExpr one_plus = one + r * r;

  sc.lambda0 = Rat(1);
  sc.phi0 = r / one_plus;
  sc.omega0 = rpoly(-2, 3, 1) / (r * rpoly(-1, 0, 1));
  sc.v_plain = rpoly(2, -12, 2) / RationalExpr(potential_denominator());
  sc.v_transformed = (RationalExpr(Rat(6)) - RationalExpr(Rat(2)) * r * r) / (r * r * one_plus);
  return sc;
}

SusyCase make_case_11() {
  SusyCase sc;
  sc.l = 1;
  sc.m = 1;
  RationalExpr r = rvar();
  RationalExpr one(Rat(1));
  RationalExpr one_plus = one + r * r;

  sc.lambda0 = Rat(0);
  sc.phi0 = r / one_plus;
  sc.omega0 = RationalExpr(Rat(2)) / (r * one_plus);
  sc.v_plain = rpoly(2, -8, 6) / RationalExpr(potential_denominator());
  sc.v_transformed = rpoly(6, 0, -2) / (r * r * one_plus);
  return sc;
}

SusyCase make_case_21() {
  SusyCase sc;
  sc.l = 2;
  sc.m = 1;
  RationalExpr r = rvar();
  RationalExpr one(Rat(1));
  RationalExpr one_plus = one + r * r;

  sc.lambda0 = Rat(0);
  sc.phi0 = r * r / one_plus;
  sc.omega0 = (RationalExpr(Rat(3)) + r * r) / (r * one_plus);
  sc.v_plain = rpoly(6, -8, 2) / RationalExpr(potential_denominator());
  sc.v_transformed = RationalExpr(Rat(12)) / (r * r * one_plus);
  return sc;
}

void check_case(SusyCase& sc) {
  // stored plain potential must agree with the closed form
  if (!sc.v_plain.equals(potential(sc.l, sc.m))) {
    raise(ErrorCode::TableMismatch, "stored block potential disagrees with the closed form");
  }
  // the reference solution must solve the mode equation at its rate
  RationalExpr res =
      mode_ode_residual(sc.phi0, RationalExpr(sc.lambda0), sc.l, sc.m, /*transformed=*/false);
  if (!res.is_zero()) {
    raise(ErrorCode::TableMismatch, "primary reference solution fails the mode equation");
  }
  // first weight re-derivation
  RationalExpr w0 = single_weight(sc.phi0, sc.lambda0);
  if (!w0.equals(sc.omega0)) {
    raise(ErrorCode::TableMismatch, "first factorisation weight disagrees with the derivation");
  }
  if (sc.two_step) {
    RationalExpr res1 =
        mode_ode_residual(sc.phi1, RationalExpr(sc.lambda1), sc.l, sc.m, /*transformed=*/false);
    if (!res1.is_zero()) {
      raise(ErrorCode::TableMismatch, "second reference solution fails the mode equation");
    }
    RationalExpr w1 = second_weight(sc.phi1, sc.omega0);
    if (!w1.equals(sc.omega1)) {
      raise(ErrorCode::TableMismatch, "second factorisation weight disagrees with the derivation");
    }
  }
  // image potential re-derivation (also checks the two elimination routes)
  RationalExpr vt = derive_transformed_potential(sc);
  if (!vt.equals(sc.v_transformed)) {
    raise(ErrorCode::TableMismatch, "stored image potential disagrees with the derivation");
  }
}

}  // namespace

RationalExpr potential(int l, int m) {
  if (!valid_block(l, m)) raise(ErrorCode::InvalidIndex, "invalid angular block");
  long L = static_cast<long>(l) * (l + 1);
  long M = static_cast<long>(m) * (m + 1);
  return rpoly(L, 2 * M - 12, 4 + 2 * M - L) / RationalExpr(potential_denominator());
}

RationalExpr potential_family(int offset) {
  if (offset < -1 || offset > 1) raise(ErrorCode::InvalidIndex, "family offset must be -1, 0, +1");
  MultiPoly lp = MultiPoly::variable(Var::l);
  MultiPoly one(Rat(1));
  MultiPoly L = lp * (lp + one);
  MultiPoly mp = lp + MultiPoly(Rat(offset));
  MultiPoly M = mp * (mp + one);
  MultiPoly r = MultiPoly::variable(Var::r);
  MultiPoly two(Rat(2));
  MultiPoly num = (MultiPoly(Rat(4)) + two * M - L) * r.pow(4) +
                  (two * M - MultiPoly(Rat(12))) * r.pow(2) + L;
  return RationalExpr(num) / RationalExpr(potential_denominator());
}

ModeODE mode_ode(const RationalExpr& lambda, int l, int m, bool transformed) {
  RationalExpr v = transformed ? susy_case(l, m).v_transformed : potential(l, m);
  RationalExpr mfac = one_minus_r2();
  ModeODE eq;
  eq.P = first_order_coefficient(lambda) / mfac;
  eq.Q = RationalExpr(Rat(0)) - (lambda * lambda + lambda + v) / mfac;
  return eq;
}

ModeODE mode_ode_family(const RationalExpr& lambda, int offset) {
  RationalExpr v = potential_family(offset);
  RationalExpr mfac = one_minus_r2();
  ModeODE eq;
  eq.P = first_order_coefficient(lambda) / mfac;
  eq.Q = RationalExpr(Rat(0)) - (lambda * lambda + lambda + v) / mfac;
  return eq;
}

namespace {
RationalExpr residual_with_potential(const RationalExpr& phi, const RationalExpr& lambda,
                                     const RationalExpr& v) {
  RationalExpr d1 = phi.derivative(Var::r);
  RationalExpr d2 = d1.derivative(Var::r);
  return one_minus_r2() * d2 + first_order_coefficient(lambda) * d1 -
         (lambda * lambda + lambda + v) * phi;
}
}  // namespace

RationalExpr mode_ode_residual(const RationalExpr& phi, const RationalExpr& lambda, int l, int m,
                               bool transformed) {
  RationalExpr v = transformed ? susy_case(l, m).v_transformed : potential(l, m);
  return residual_with_potential(phi, lambda, v);
}

RationalExpr mode_ode_residual_family(const RationalExpr& phi, const RationalExpr& lambda,
                                      int offset) {
  return residual_with_potential(phi, lambda, potential_family(offset));
}

const SusyCase& susy_case(int l, int m) {
  static std::map<std::pair<int, int>, SusyCase> cases;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(l, m);
  auto it = cases.find(key);
  if (it != cases.end()) return it->second;

  SusyCase sc;
  if (l == 0 && m == 1) {
    sc = make_case_01();
  } else if (l == 1 && m == 0) {
    sc = make_case_10();
  } else if (l == 1 && m == 1) {
    sc = make_case_11();
  } else if (l == 2 && m == 1) {
    sc = make_case_21();
  } else {
    raise(ErrorCode::UnsupportedCase, "no factorisation data for this block");
  }
  check_case(sc);
  return cases.emplace(key, std::move(sc)).first->second;
}

RationalExpr susy_transform(const RationalExpr& phi, const RationalExpr& lambda, int l, int m) {
  const SusyCase& sc = susy_case(l, m);
  RationalExpr r = rvar();
  RationalExpr one(Rat(1));
  RationalExpr mfac = one_minus_r2();
  if (!sc.two_step) {
    RationalExpr rho = one / r - lambda * r / mfac - sc.omega0;
    return mfac * (phi.derivative(Var::r) + rho * phi);
  }
  RationalExpr rho0 = one / r - lambda * r / mfac - sc.omega0;
  RationalExpr u = phi.derivative(Var::r) + rho0 * phi;
  RationalExpr rho1 = one / r - (lambda + RationalExpr(Rat(2))) * r / mfac - sc.omega1;
  return mfac * mfac * (u.derivative(Var::r) + rho1 * u);
}

RationalExpr transformed_potential(int l, int m) { return susy_case(l, m).v_transformed; }

std::pair<RationalExpr, RationalExpr> frobenius_indices(const ModeODE& eq, const Rat& point,
                                                        Var radial) {
  RationalExpr shift =
      RationalExpr(MultiPoly::variable(radial)) - RationalExpr(MultiPoly::constant(point));
  RationalExpr p0, q0;
  try {
    p0 = (shift * eq.P).reduce().substitute(radial, RationalExpr(point)).reduce();
    q0 = (shift * shift * eq.Q).reduce().substitute(radial, RationalExpr(point)).reduce();
  } catch (const EngineError& e) {
    if (e.code() == ErrorCode::DivisionByZeroPoly) {
      raise(ErrorCode::NotRegularSingular, "coefficient limits do not exist at the point");
    }
    throw;
  }
  // roots of s(s-1) + p0 s + q0
  RationalExpr one(Rat(1));
  RationalExpr half(Rat(1, 2));
  RationalExpr disc = ((p0 - one) * (p0 - one) - RationalExpr(Rat(4)) * q0).reduce();
  MultiPoly root_num = poly_sqrt_exact(disc.num());
  MultiPoly root_den = poly_sqrt_exact(disc.den());
  RationalExpr root = RationalExpr(root_num) / RationalExpr(root_den);
  RationalExpr plus = (half * (one - p0 + root)).reduce();
  RationalExpr minus = (half * (one - p0 - root)).reduce();
  return {plus, minus};
}

VectorField pde_residual(const VectorField& profile, const Rat& lambda) {
  MultiPoly y1 = MultiPoly::variable(Var::y1);
  MultiPoly y2 = MultiPoly::variable(Var::y2);
  MultiPoly y3 = MultiPoly::variable(Var::y3);
  MultiPoly r2 = y1 * y1 + y2 * y2 + y3 * y3;
  MultiPoly one(Rat(1));
  MultiPoly one_plus = one + r2;
  MultiPoly one_minus = one - r2;

  VectorField cas = casimir_operator_apply(profile);
  VectorField lap_s = sphere_laplacian_apply(profile);

  Rat lam2 = lambda * lambda;
  VectorField out;
  for (int i = 0; i < 3; ++i) {
    const MultiPoly& psi = profile.comp[i];
    MultiPoly e1 = euler_apply(psi);
    MultiPoly e2 = euler_apply(e1);
    MultiPoly term = MultiPoly(Rat(0));
    term = term - MultiPoly(lam2) * r2 * one_plus * psi;
    term = term - MultiPoly(lambda) * (one - MultiPoly(Rat(3)) * r2) * r2 * psi;
    term = term - MultiPoly(Rat(2) * lambda) * r2 * one_plus * e1;
    term = term + one_plus * one_minus * (e2 - e1);
    term = term + MultiPoly(Rat(2)) * one_minus * one_minus * e1;
    term = term - MultiPoly(Rat(2)) * r2 * cas.comp[i];
    term = term + one_minus * lap_s.comp[i];
    term = term + (MultiPoly(Rat(6)) - MultiPoly(Rat(2)) * r2) * r2 * psi;
    out.comp[i] = term;
  }
  return out;
}

}  // namespace modecert
