#include "modecert/spherical.hpp"

#include <algorithm>

namespace modecert {

namespace {

constexpr Var kY[3] = {Var::y1, Var::y2, Var::y3};

MultiPoly y(int i) { return MultiPoly::variable(kY[i]); }

MultiPoly r2_poly() { return y(0) * y(0) + y(1) * y(1) + y(2) * y(2); }

int monomial_degree(const Exponents& e) {
  return e[static_cast<int>(Var::y1)] + e[static_cast<int>(Var::y2)] +
         e[static_cast<int>(Var::y3)];
}

void require_y_only(const MultiPoly& q, const char* op) {
  for (Var v : q.variables()) {
    if (v != Var::y1 && v != Var::y2 && v != Var::y3) {
      raise(ErrorCode::InternalError, std::string(op) + ": expected a polynomial in y only");
    }
  }
}

}  // namespace

MultiPoly euler_apply(const MultiPoly& q) {
  MultiPoly out;
  for (const auto& [e, c] : q.terms()) {
    int d = monomial_degree(e);
    if (d != 0) out += MultiPoly::monomial(c * d, e);
  }
  return out;
}

MultiPoly laplacian_apply(const MultiPoly& q) {
  MultiPoly out;
  for (Var v : kY) out += q.derivative(v).derivative(v);
  return out;
}

MultiPoly sphere_laplacian_apply(const MultiPoly& q) {
  require_y_only(q, "sphere_laplacian_apply");
  const MultiPoly r2 = r2_poly();
  MultiPoly out;
  for (const auto& [e, c] : q.terms()) {
    MultiPoly mono = MultiPoly::monomial(c, e);
    int d = monomial_degree(e);
    out += r2 * laplacian_apply(mono) - Rat(d) * Rat(d + 1) * mono;
  }
  return out;
}

VectorField momentum_coupling_apply(const VectorField& Z) {
  MultiPoly radial_pairing;  // y . Z
  MultiPoly divergence;
  for (int j = 0; j < 3; ++j) {
    radial_pairing += y(j) * Z.comp[j];
    divergence += Z.comp[j].derivative(kY[j]);
  }
  VectorField out;
  for (int i = 0; i < 3; ++i) {
    out.comp[i] = radial_pairing.derivative(kY[i]) - y(i) * divergence - Z.comp[i];
  }
  return out;
}

VectorField sphere_laplacian_apply(const VectorField& Z) {
  return {{sphere_laplacian_apply(Z.comp[0]), sphere_laplacian_apply(Z.comp[1]),
           sphere_laplacian_apply(Z.comp[2])}};
}

VectorField casimir_operator_apply(const VectorField& Z) {
  VectorField lap = sphere_laplacian_apply(Z);
  VectorField coupling = momentum_coupling_apply(Z);
  VectorField out;
  for (int i = 0; i < 3; ++i) {
    out.comp[i] = -lap.comp[i] + Rat(2) * Z.comp[i] + Rat(2) * coupling.comp[i];
  }
  return out;
}

std::pair<Rat, VectorField> casimir_apply(const VectorField& Z) {
  if (Z.is_zero()) raise(ErrorCode::InvalidIndex, "casimir_apply on the zero field");
  VectorField cz = casimir_operator_apply(Z);
  // Match the eigenvalue from the leading monomial of the first nonzero
  // component; the residual certifies (or refutes) the eigen-relation.
  Rat mu(0);
  for (int i = 0; i < 3; ++i) {
    if (Z.comp[i].is_zero()) continue;
    const auto& [e, c] = *Z.comp[i].terms().begin();
    auto it = cz.comp[i].terms().find(e);
    mu = (it == cz.comp[i].terms().end()) ? Rat(0) : Rat(it->second / c);
    break;
  }
  VectorField residual;
  for (int i = 0; i < 3; ++i) residual.comp[i] = cz.comp[i] - Z.comp[i] * mu;
  return {mu, residual};
}

Rat sphere_moment(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) raise(ErrorCode::InvalidIndex, "negative moment exponent");
  if (a % 2 || b % 2 || c % 2) return Rat(0);
  auto double_factorial = [](int k) {
    Rat acc(1);
    for (int i = k; i >= 1; i -= 2) acc *= i;
    return acc;
  };
  // (1/4pi) Int y1^2a y2^2b y3^2c = (2a-1)!!(2b-1)!!(2c-1)!!/(2a+2b+2c+1)!!
  return double_factorial(a - 1) * double_factorial(b - 1) * double_factorial(c - 1) /
         double_factorial(a + b + c + 1);
}

Rat sphere_integral(const MultiPoly& q) {
  require_y_only(q, "sphere_integral");
  Rat acc(0);
  for (const auto& [e, c] : q.terms()) {
    acc += c * sphere_moment(e[static_cast<int>(Var::y1)], e[static_cast<int>(Var::y2)],
                             e[static_cast<int>(Var::y3)]);
  }
  return acc;
}

Rat sphere_inner_product(const VectorField& A, const VectorField& B) {
  MultiPoly dot;
  for (int i = 0; i < 3; ++i) dot += A.comp[i] * B.comp[i];
  return sphere_integral(dot);
}

std::vector<VectorField> clebsch_gordan_basis(int l, int m) {
  auto E = [](int i) {
    VectorField f;
    f.comp[i] = MultiPoly(Rat(1));
    return f;
  };
  if (l == 0 && m == 1) {
    return {E(0), E(1), E(2)};
  }
  if (l == 1 && m == 0) {
    return {{{y(0), y(1), y(2)}}};
  }
  if (l == 1 && m == 1) {
    return {
        {{MultiPoly(), -y(2), y(1)}},
        {{y(2), MultiPoly(), -y(0)}},
        {{-y(1), y(0), MultiPoly()}},
    };
  }
  if (l == 1 && m == 2) {
    // Symmetric traceless block; the two diagonal members are orthogonalised
    // (2*y1, -y2, -y3) against (0, y2, -y3) so the whole basis is pairwise
    // orthogonal on the sphere.
    return {
        {{MultiPoly(), y(1), -y(2)}},
        {{MultiPoly(), y(2), y(1)}},
        {{y(2), MultiPoly(), y(0)}},
        {{Rat(2) * y(0), -y(1), -y(2)}},
        {{y(1), y(0), MultiPoly()}},
    };
  }
  if (l == 2 && m == 1) {
    MultiPoly m3(Rat(-3));
    return {
        {{Rat(-2) * y(0) * y(0) + y(1) * y(1) + y(2) * y(2), m3 * y(0) * y(1), m3 * y(0) * y(2)}},
        {{m3 * y(0) * y(1), y(0) * y(0) - Rat(2) * y(1) * y(1) + y(2) * y(2), m3 * y(1) * y(2)}},
        {{m3 * y(0) * y(2), m3 * y(1) * y(2), y(0) * y(0) + y(1) * y(1) - Rat(2) * y(2) * y(2)}},
    };
  }
  raise(ErrorCode::InvalidIndex, "no catalogued angular basis for block (" + std::to_string(l) +
                                     ", " + std::to_string(m) + ")");
}

bool valid_block(int l, int m) {
  if (l == 1 && m == 0) return true;
  if (l == 0 && m == 1) return true;
  return l >= 1 && m >= 1 && std::abs(l - m) <= 1;
}

const std::vector<Mode>& mode_catalogue() {
  static const std::vector<Mode> catalogue = [] {
    std::vector<Mode> modes;
    const MultiPoly r2 = r2_poly();
    auto add_block = [&](int l, int m, Rat lambda, const MultiPoly& radial,
                         const MultiPoly& radial_over_rl) {
      auto basis = clebsch_gordan_basis(l, m);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        Mode mode;
        mode.l = l;
        mode.m = m;
        mode.k = static_cast<int>(k);
        mode.lambda = lambda;
        mode.radial_factor = radial;
        mode.profile = radial_over_rl * basis[k];
        modes.push_back(std::move(mode));
      }
    };
    const MultiPoly one(Rat(1));
    const MultiPoly r = MultiPoly::variable(Var::r);
    // rate 1: the generator block (1,0) and the translation block (0,1)
    add_block(1, 0, Rat(1), r, one);
    add_block(0, 1, Rat(1), one, one);
    // rate 0: dilation-type block (0,1) with radial factor r^2 - 3,
    // the rotation block (1,1) and the boost block (2,1)
    add_block(0, 1, Rat(0), r * r - MultiPoly(Rat(3)), r2 - MultiPoly(Rat(3)));
    add_block(1, 1, Rat(0), r, one);
    add_block(2, 1, Rat(0), r * r, one);
    return modes;
  }();
  return catalogue;
}

}  // namespace modecert
