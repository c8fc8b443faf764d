#pragma once

#include <string>
#include <vector>

#include "modecert/errors.hpp"

namespace modecert {

// Identifies one verification target: either a concrete block (l, m) or a
// symbolic family in l at fixed offset m - l.
struct CaseKey {
  enum class Kind { Finite, Family };
  Kind kind = Kind::Finite;
  int l = 0;       // concrete degree (Finite only)
  int m = 0;       // concrete Casimir index (Finite only)
  int offset = 0;  // m - l (Family only)

  static CaseKey finite(int l, int m);
  static CaseKey family(int offset);

  bool is_family() const { return kind == Kind::Family; }
  // "01", "11", ..., for finite cases; "l1" (m=l-1), "l2" (m=l), "l3" (m=l+1)
  // for families, matching the supplement file naming.
  std::string name() const;
  static CaseKey from_name(const std::string& name);

  friend bool operator==(const CaseKey& a, const CaseKey& b) {
    return a.kind == b.kind && a.l == b.l && a.m == b.m && a.offset == b.offset;
  }
};

// The nine finite cases certified individually.
std::vector<CaseKey> finite_cases();
// The three symbolic families covering all remaining blocks.
std::vector<CaseKey> family_cases();
// All twelve verification targets in canonical order.
std::vector<CaseKey> all_cases();

}  // namespace modecert
