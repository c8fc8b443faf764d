#include "modecert/certificate.hpp"

namespace modecert {

const char* to_string(CertKind kind) {
  switch (kind) {
    case CertKind::ShiftSign: return "ShiftSign";
    case CertKind::SturmInterval: return "SturmInterval";
    case CertKind::RootNegativity: return "RootNegativity";
    case CertKind::Wall: return "Wall";
    case CertKind::BoundA: return "BoundA";
    case CertKind::BoundB: return "BoundB";
    case CertKind::BoundE0: return "BoundE0";
    case CertKind::Closure: return "Closure";
    case CertKind::PoincareLimits: return "PoincareLimits";
    case CertKind::HypergeomDecay: return "HypergeomDecay";
  }
  return "Unknown";
}

std::optional<std::string> Certificate::find_note(const std::string& key) const {
  for (const auto& [k, v] : notes) {
    if (k == key) return v;
  }
  return std::nullopt;
}

}  // namespace modecert
