#pragma once

#include <array>
#include <utility>
#include <vector>

#include "modecert/multipoly.hpp"
#include "modecert/rational_expr.hpp"

namespace modecert {

// Vector field on R^3 with polynomial components in y1, y2, y3.
struct VectorField {
  std::array<MultiPoly, 3> comp;

  bool is_zero() const { return comp[0].is_zero() && comp[1].is_zero() && comp[2].is_zero(); }

  friend VectorField operator+(const VectorField& a, const VectorField& b) {
    return {{a.comp[0] + b.comp[0], a.comp[1] + b.comp[1], a.comp[2] + b.comp[2]}};
  }
  friend VectorField operator-(const VectorField& a, const VectorField& b) {
    return {{a.comp[0] - b.comp[0], a.comp[1] - b.comp[1], a.comp[2] - b.comp[2]}};
  }
  friend VectorField operator*(const Rat& c, const VectorField& a) {
    return {{a.comp[0] * c, a.comp[1] * c, a.comp[2] * c}};
  }
  friend VectorField operator*(const MultiPoly& p, const VectorField& a) {
    return {{p * a.comp[0], p * a.comp[1], p * a.comp[2]}};
  }
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.comp == b.comp; }
};

// ---- scalar operators -------------------------------------------------------

// Euler operator sum_i y_i d/dy_i (multiplies each monomial by its degree).
MultiPoly euler_apply(const MultiPoly& q);

// Flat Laplacian in y.
MultiPoly laplacian_apply(const MultiPoly& q);

// Spherical Laplacian on a polynomial restricted to the unit-sphere
// foliation: on a homogeneous piece of degree d it acts as r^2*Delta - d(d+1).
MultiPoly sphere_laplacian_apply(const MultiPoly& q);

// ---- vector operators -------------------------------------------------------

// First-order coupling operator: (M Psi)_i = d_i(y . Psi) - y_i div(Psi) - Psi_i.
VectorField momentum_coupling_apply(const VectorField& Z);

// Componentwise spherical Laplacian.
VectorField sphere_laplacian_apply(const VectorField& Z);

// Angular Casimir of the coupled system: c = -Laplace_sphere + 2 + 2 M.
VectorField casimir_operator_apply(const VectorField& Z);

// Returns (mu, residual) with residual = c(Z) - mu * Z, where mu is matched
// from the leading term of the first nonzero component.  residual == 0 iff Z
// is an eigenfield with eigenvalue mu.
std::pair<Rat, VectorField> casimir_apply(const VectorField& Z);

// ---- sphere integration -----------------------------------------------------

// Normalised moment (1/4pi) * integral over S^2 of y1^a y2^b y3^c.
Rat sphere_moment(int a, int b, int c);

// Normalised integral over S^2 of the restriction of a polynomial.
Rat sphere_integral(const MultiPoly& q);

// Normalised L^2(S^2) pairing of two vector fields.
Rat sphere_inner_product(const VectorField& A, const VectorField& B);

// ---- eigenbasis catalogue ---------------------------------------------------

// Orthogonal basis fields for the joint (angular momentum, Casimir) block
// (l, m); components are homogeneous of degree l.  Supported blocks:
// (0,1), (1,0), (1,1), (1,2), (2,1).  Throws InvalidIndex otherwise.
std::vector<VectorField> clebsch_gordan_basis(int l, int m);

// Whether the pair (l, m) admits modes of the radial system: m >= 1 and
// |l - m| <= 1, or the exceptional corotational block (1, 0).
bool valid_block(int l, int m);

// One eigenmode of the full linearised flow.
struct Mode {
  int l;               // homogeneity degree of the angular block
  int m;               // Casimir index: eigenvalue m(m+1)
  int k;               // position within the angular basis of the block
  Rat lambda;          // growth rate
  VectorField profile; // polynomial profile in y
  MultiPoly radial_factor;  // f(r) with profile = (f / r^l) * (angular basis field)
};

// The complete catalogue of explicit eigenmodes: 4 with rate 1 and 9 with
// rate 0, all of which the residual operators must annihilate exactly.
const std::vector<Mode>& mode_catalogue();

}  // namespace modecert
