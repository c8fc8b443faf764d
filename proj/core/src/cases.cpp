#include "modecert/cases.hpp"

namespace modecert {

CaseKey CaseKey::finite(int l, int m) {
  CaseKey k;
  k.kind = Kind::Finite;
  k.l = l;
  k.m = m;
  return k;
}

CaseKey CaseKey::family(int offset) {
  if (offset < -1 || offset > 1) raise(ErrorCode::InvalidIndex, "family offset must be -1, 0, +1");
  CaseKey k;
  k.kind = Kind::Family;
  k.offset = offset;
  return k;
}

std::string CaseKey::name() const {
  if (kind == Kind::Finite) return std::to_string(l) + std::to_string(m);
  switch (offset) {
    case -1: return "l1";
    case 0: return "l2";
    case 1: return "l3";
  }
  raise(ErrorCode::InvalidIndex, "invalid family offset");
}

CaseKey CaseKey::from_name(const std::string& name) {
  if (name == "l1") return family(-1);
  if (name == "l2") return family(0);
  if (name == "l3") return family(1);
  if (name.size() == 2 && name[0] >= '0' && name[0] <= '9' && name[1] >= '0' && name[1] <= '9') {
    return finite(name[0] - '0', name[1] - '0');
  }
  raise(ErrorCode::UnsupportedCase, "unknown case name: " + name);
}

std::vector<CaseKey> finite_cases() {
  return {CaseKey::finite(0, 1), CaseKey::finite(1, 0), CaseKey::finite(1, 1),
          CaseKey::finite(1, 2), CaseKey::finite(2, 1), CaseKey::finite(2, 2),
          CaseKey::finite(2, 3), CaseKey::finite(3, 2), CaseKey::finite(3, 3)};
}

std::vector<CaseKey> family_cases() {
  return {CaseKey::family(-1), CaseKey::family(0), CaseKey::family(1)};
}

std::vector<CaseKey> all_cases() {
  std::vector<CaseKey> out = finite_cases();
  for (const CaseKey& k : family_cases()) out.push_back(k);
  return out;
}

}  // namespace modecert
