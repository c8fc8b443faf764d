#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modecert/rational_expr.hpp"

namespace modecert {

// Every certified claim produced by the engine is reported through this
// structure.  `pass` is the verdict; the witness fields carry the exact data
// needed to re-verify the claim independently of the code path that
// produced it.
enum class CertKind {
  ShiftSign,       // sign pattern of a polynomial after an orthant shift
  SturmInterval,   // root exclusion + sign on a closed interval
  RootNegativity,  // both roots of a quadratic have negative real part
  Wall,            // continued-fraction positivity (Hurwitz stability)
  BoundA,          // envelope bound on the first error coefficient
  BoundB,          // envelope bound on the second error coefficient
  BoundE0,         // bound on the initial error at the starting index
  Closure,         // invariance of the error interval under the iteration
  PoincareLimits,  // limit coefficients and characteristic roots
  HypergeomDecay,  // index conditions and tail decay for the closed-form case
};

const char* to_string(CertKind kind);

struct Certificate {
  CertKind kind{};
  bool pass = false;

  // Human-readable labels -> exact values, e.g. "shift.n" -> "2".
  std::vector<std::pair<std::string, std::string>> notes;

  // Kind-specific exact witnesses.
  std::vector<Rat> shifted_coefficients;          // ShiftSign / SturmInterval
  std::vector<RationalExpr> fraction_witnesses;   // Wall partial quotients, root data
  std::vector<MultiPoly> poly_witnesses;          // shifted polynomials, Sturm chain

  std::string failure_reason;  // empty on PASS

  void note(const std::string& key, const std::string& value) { notes.emplace_back(key, value); }
  std::optional<std::string> find_note(const std::string& key) const;
};

}  // namespace modecert
