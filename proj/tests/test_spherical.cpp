#include "doctest.h"

#include <map>
#include <vector>

#include "modecert/spherical.hpp"

using namespace modecert;

namespace {

MultiPoly Y(int i) {
  static const Var v[3] = {Var::y1, Var::y2, Var::y3};
  return MultiPoly::variable(v[i]);
}

// Rank over the rationals of vector fields viewed as coefficient vectors.
int field_rank(const std::vector<VectorField>& fields) {
  std::map<std::pair<int, Exponents>, int> columns;
  for (const auto& f : fields) {
    for (int i = 0; i < 3; ++i) {
      for (const auto& [e, c] : f.comp[i].terms()) {
        columns.emplace(std::make_pair(i, e), static_cast<int>(columns.size()));
      }
    }
  }
  std::vector<std::vector<Rat>> rows;
  for (const auto& f : fields) {
    std::vector<Rat> row(columns.size(), Rat(0));
    for (int i = 0; i < 3; ++i) {
      for (const auto& [e, c] : f.comp[i].terms()) row[columns[{i, e}]] = c;
    }
    rows.push_back(std::move(row));
  }
  int rank = 0;
  std::size_t col = 0;
  while (col < columns.size() && rank < static_cast<int>(rows.size())) {
    int pivot = -1;
    for (int rii = rank; rii < static_cast<int>(rows.size()); ++rii) {
      if (rows[rii][col] != 0) {
        pivot = rii;
        break;
      }
    }
    if (pivot < 0) {
      ++col;
      continue;
    }
    std::swap(rows[rank], rows[pivot]);
    for (int rii = 0; rii < static_cast<int>(rows.size()); ++rii) {
      if (rii == rank || rows[rii][col] == 0) continue;
      Rat factor = rows[rii][col] / rows[rank][col];
      for (std::size_t cc = col; cc < columns.size(); ++cc) {
        rows[rii][cc] -= factor * rows[rank][cc];
      }
    }
    ++rank;
    ++col;
  }
  return rank;
}

}  // namespace

TEST_CASE("angular basis sizes follow the multiplicity rule") {
  CHECK(clebsch_gordan_basis(0, 1).size() == 3);
  CHECK(clebsch_gordan_basis(1, 0).size() == 1);
  CHECK(clebsch_gordan_basis(1, 1).size() == 3);
  CHECK(clebsch_gordan_basis(1, 2).size() == 5);
  CHECK(clebsch_gordan_basis(2, 1).size() == 3);
  CHECK_THROWS_AS(clebsch_gordan_basis(0, 0), EngineError);
  CHECK_THROWS_AS(clebsch_gordan_basis(3, 2), EngineError);
}

TEST_CASE("coupling operator on reference fields") {
  // Constant fields are annihilated.
  VectorField e1;
  e1.comp[0] = MultiPoly(Rat(1));
  CHECK(momentum_coupling_apply(e1).is_zero());

  // The radial field y has coupling eigenvalue -2.
  VectorField yfield{{Y(0), Y(1), Y(2)}};
  VectorField my = momentum_coupling_apply(yfield);
  CHECK(my == Rat(-2) * yfield);

  // Degree-2 block: eigenvalue -3.
  for (const auto& Z : clebsch_gordan_basis(2, 1)) {
    CHECK(momentum_coupling_apply(Z) == Rat(-3) * Z);
  }
}

TEST_CASE("spherical laplacian eigenvalues on the angular basis") {
  auto check_block = [](int l, int m) {
    for (const auto& Z : clebsch_gordan_basis(l, m)) {
      CHECK(sphere_laplacian_apply(Z) == Rat(-l * (l + 1)) * Z);
    }
  };
  check_block(0, 1);
  check_block(1, 0);
  check_block(1, 1);
  check_block(1, 2);
  check_block(2, 1);
}

TEST_CASE("casimir eigenvalues m(m+1) with exact zero residual") {
  auto check_block = [](int l, int m) {
    for (const auto& Z : clebsch_gordan_basis(l, m)) {
      auto [mu, residual] = casimir_apply(Z);
      CHECK(mu == Rat(m * (m + 1)));
      CHECK(residual.is_zero());
    }
  };
  check_block(0, 1);
  check_block(1, 0);
  check_block(1, 1);
  check_block(1, 2);
  check_block(2, 1);
}

TEST_CASE("casimir residual is nonzero off the eigenbasis") {
  // y1 * e1 is not an eigenfield of the coupled Casimir.
  VectorField Z;
  Z.comp[0] = Y(0);
  auto [mu, residual] = casimir_apply(Z);
  CHECK_FALSE(residual.is_zero());
}

TEST_CASE("sphere moments: closed form and parity") {
  CHECK(sphere_moment(0, 0, 0) == Rat(1));
  CHECK(sphere_moment(2, 0, 0) == rat(1, 3));
  CHECK(sphere_moment(4, 0, 0) == rat(1, 5));
  CHECK(sphere_moment(2, 2, 0) == rat(1, 15));
  CHECK(sphere_moment(2, 2, 2) == rat(1, 105));
  CHECK(sphere_moment(6, 0, 0) == rat(1, 7));
  CHECK(sphere_moment(1, 0, 0) == Rat(0));
  CHECK(sphere_moment(1, 1, 2) == Rat(0));
}

TEST_CASE("sphere moments integrate r^2 to 1 on the sphere") {
  MultiPoly r2 = Y(0) * Y(0) + Y(1) * Y(1) + Y(2) * Y(2);
  CHECK(sphere_integral(r2) == Rat(1));
  CHECK(sphere_integral(r2 * r2) == Rat(1));
}

TEST_CASE("angular bases are orthogonal with nonzero norms") {
  auto check_block = [](int l, int m) {
    auto basis = clebsch_gordan_basis(l, m);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        Rat ip = sphere_inner_product(basis[i], basis[j]);
        if (i == j) {
          CHECK(ip > 0);
        } else {
          CHECK(ip == 0);
        }
      }
    }
  };
  check_block(0, 1);
  check_block(1, 0);
  check_block(1, 1);
  check_block(1, 2);
  check_block(2, 1);
}

TEST_CASE("mode catalogue has 13 independent entries with rates 1 and 0") {
  const auto& modes = mode_catalogue();
  REQUIRE(modes.size() == 13);
  int rate1 = 0, rate0 = 0;
  for (const auto& m : modes) {
    if (m.lambda == 1) ++rate1;
    if (m.lambda == 0) ++rate0;
  }
  CHECK(rate1 == 4);
  CHECK(rate0 == 9);

  std::vector<VectorField> profiles;
  for (const auto& m : modes) profiles.push_back(m.profile);
  CHECK(field_rank(profiles) == 13);
}

TEST_CASE("catalogue profiles factor into radial and angular parts") {
  const auto& modes = mode_catalogue();
  // Evaluate both sides at a generic rational point.
  std::map<Var, Rat> pt{{Var::y1, rat(1, 2)}, {Var::y2, rat(1, 3)}, {Var::y3, rat(-1, 4)}};
  Rat r2 = pt[Var::y1] * pt[Var::y1] + pt[Var::y2] * pt[Var::y2] + pt[Var::y3] * pt[Var::y3];
  for (const auto& m : modes) {
    auto basis = clebsch_gordan_basis(m.l, m.m);
    REQUIRE(m.k < static_cast<int>(basis.size()));
    // radial_factor / r^l must be a polynomial in r^2; evaluate it at r2.
    Rat scale(0);
    for (const auto& [k, coeff] : m.radial_factor.coefficients(Var::r)) {
      REQUIRE((k - m.l) % 2 == 0);
      REQUIRE(k >= m.l);
      scale += coeff.constant_value() * rat_pow(r2, static_cast<unsigned>((k - m.l) / 2));
    }
    for (int i = 0; i < 3; ++i) {
      CHECK(m.profile.comp[i].eval(pt) == scale * basis[m.k].comp[i].eval(pt));
    }
  }
}

TEST_CASE("catalogue angular parts carry the catalogued casimir index") {
  for (const auto& m : mode_catalogue()) {
    auto basis = clebsch_gordan_basis(m.l, m.m);
    auto [mu, residual] = casimir_apply(basis[m.k]);
    CHECK(mu == Rat(m.m * (m.m + 1)));
    CHECK(residual.is_zero());
  }
}

TEST_CASE("orthogonalised degree-1 index-2 block spans the symmetric traceless fields") {
  // Reference (non-orthogonal) spanning set: A*y for symmetric traceless A.
  std::vector<VectorField> printed = {
      {{MultiPoly(), Y(1), -Y(2)}}, {{MultiPoly(), Y(2), Y(1)}}, {{Y(2), MultiPoly(), Y(0)}},
      {{Y(0), -Y(1), MultiPoly()}}, {{Y(1), Y(0), MultiPoly()}},
  };
  auto basis = clebsch_gordan_basis(1, 2);
  std::vector<VectorField> all = printed;
  all.insert(all.end(), basis.begin(), basis.end());
  CHECK(field_rank(printed) == 5);
  CHECK(field_rank(basis) == 5);
  CHECK(field_rank(all) == 5);  // same span
}

TEST_CASE("block validity predicate") {
  CHECK(valid_block(1, 0));
  CHECK(valid_block(0, 1));
  CHECK(valid_block(1, 1));
  CHECK(valid_block(1, 2));
  CHECK(valid_block(5, 4));
  CHECK(valid_block(5, 6));
  CHECK_FALSE(valid_block(0, 0));
  CHECK_FALSE(valid_block(2, 0));
  CHECK_FALSE(valid_block(5, 3));
  CHECK_FALSE(valid_block(3, 5));
}
