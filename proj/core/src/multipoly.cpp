#include "modecert/multipoly.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>

namespace modecert {

namespace {

const char* kVarNames[kVarCount] = {"n", "l", "x", "T", "z", "r", "y1", "y2", "y3"};

}  // namespace

const char* var_name(Var v) { return kVarNames[static_cast<int>(v)]; }

Var var_from_name(const std::string& name) {
  for (int i = 0; i < kVarCount; ++i) {
    if (name == kVarNames[i]) return static_cast<Var>(i);
  }
  raise(ErrorCode::ParseError, "unknown variable name: " + name);
}

MultiPoly::MultiPoly(const Rat& c) {
  if (c != 0) terms_.emplace(kZeroExponents, c);
}

MultiPoly::MultiPoly(long c) : MultiPoly(Rat(c)) {}

MultiPoly MultiPoly::constant(const Rat& c) { return MultiPoly(c); }

MultiPoly MultiPoly::variable(Var v) {
  Exponents e = kZeroExponents;
  e[static_cast<int>(v)] = 1;
  return monomial(Rat(1), e);
}

MultiPoly MultiPoly::monomial(const Rat& c, const Exponents& e) {
  MultiPoly p;
  if (c != 0) p.terms_.emplace(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == kZeroExponents;
}

Rat MultiPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) raise(ErrorCode::InternalError, "constant_value on non-constant polynomial");
  return terms_.begin()->second;
}

int MultiPoly::degree(Var v) const {
  if (terms_.empty()) return -1;
  int d = 0;
  const int idx = static_cast<int>(v);
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[idx]));
  return d;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  // First term has maximal total degree under the graded order.
  const Exponents& e = terms_.begin()->first;
  int d = 0;
  for (int i = 0; i < kVarCount; ++i) d += e[i];
  return d;
}

bool MultiPoly::contains(Var v) const {
  const int idx = static_cast<int>(v);
  for (const auto& [e, c] : terms_) {
    if (e[idx] > 0) return true;
  }
  return false;
}

std::vector<Var> MultiPoly::variables() const {
  std::vector<Var> out;
  for (int i = 0; i < kVarCount; ++i) {
    if (contains(static_cast<Var>(i))) out.push_back(static_cast<Var>(i));
  }
  return out;
}

const Rat& MultiPoly::leading_coefficient() const {
  if (terms_.empty()) raise(ErrorCode::InternalError, "leading_coefficient of zero polynomial");
  return terms_.begin()->second;
}

void MultiPoly::add_term(const Exponents& e, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e;
      for (int i = 0; i < kVarCount; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result(Rat(1));
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    base = base * base;
    k >>= 1u;
  }
  return result;
}

MultiPoly MultiPoly::derivative(Var v) const {
  const int idx = static_cast<int>(v);
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exponents d = e;
    d[idx] -= 1;
    out.add_term(d, c * Rat(e[idx]));
  }
  return out;
}

MultiPoly MultiPoly::substitute(Var v, const MultiPoly& q) const {
  const int idx = static_cast<int>(v);
  int d = degree(v);
  if (d <= 0 && !contains(v)) return *this;
  // Cache powers of q.
  std::vector<MultiPoly> powers(static_cast<std::size_t>(d) + 1);
  powers[0] = MultiPoly(Rat(1));
  for (int k = 1; k <= d; ++k) powers[k] = powers[k - 1] * q;
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    int k = rest[idx];
    rest[idx] = 0;
    out += monomial(c, rest) * powers[k];
  }
  return out;
}

MultiPoly MultiPoly::coefficient(Var v, int k) const {
  const int idx = static_cast<int>(v);
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    if (e[idx] == k) {
      Exponents rest = e;
      rest[idx] = 0;
      out.add_term(rest, c);
    }
  }
  return out;
}

std::vector<std::pair<int, MultiPoly>> MultiPoly::coefficients(Var v) const {
  const int idx = static_cast<int>(v);
  std::map<int, MultiPoly> buckets;
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    int k = rest[idx];
    rest[idx] = 0;
    buckets[k].add_term(rest, c);
  }
  std::vector<std::pair<int, MultiPoly>> out;
  out.reserve(buckets.size());
  for (auto& [k, p] : buckets) out.emplace_back(k, std::move(p));
  return out;
}

Rat MultiPoly::eval(const std::map<Var, Rat>& point) const {
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat term = c;
    for (int i = 0; i < kVarCount; ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(static_cast<Var>(i));
      if (it == point.end()) {
        raise(ErrorCode::InternalError,
              std::string("eval: no value assigned to variable ") + kVarNames[i]);
      }
      term *= rat_pow(it->second, static_cast<unsigned>(e[i]));
    }
    acc += term;
  }
  return acc;
}

CRat MultiPoly::eval_complex(const std::map<Var, CRat>& point) const {
  CRat acc;
  for (const auto& [e, c] : terms_) {
    CRat term{c};
    for (int i = 0; i < kVarCount; ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(static_cast<Var>(i));
      if (it == point.end()) {
        raise(ErrorCode::InternalError,
              std::string("eval_complex: no value assigned to variable ") + kVarNames[i]);
      }
      for (int k = 0; k < e[i]; ++k) term = term * it->second;
    }
    acc = acc + term;
  }
  return acc;
}

Rat MultiPoly::content() const {
  if (terms_.empty()) return Rat(0);
  mpz_class num_gcd(0), den_lcm(1);
  for (const auto& [e, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rat result(num_gcd, den_lcm);
  result.canonicalize();
  return result < 0 ? Rat(-result) : result;
}

MultiPoly MultiPoly::primitive_part(int* sign_out) const {
  if (terms_.empty()) {
    if (sign_out) *sign_out = 1;
    return MultiPoly();
  }
  Rat c = content();
  MultiPoly out = *this;
  out *= Rat(1) / c;
  int s = sign(out.leading_coefficient());
  if (s < 0) out *= Rat(-1);
  if (sign_out) *sign_out = s;
  return out;
}

// ---- canonical text ---------------------------------------------------------

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    os << rat_to_string(rat_abs(c));
    for (int i = 0; i < kVarCount; ++i) {
      if (e[i] == 0) continue;
      os << " * " << kVarNames[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

namespace {

struct Scanner {
  const std::string& s;
  std::size_t pos = 0;

  bool eof() const { return pos >= s.size(); }
  bool consume(const std::string& literal) {
    if (s.compare(pos, literal.size(), literal) == 0) {
      pos += literal.size();
      return true;
    }
    return false;
  }
  std::string take_while(bool (*pred)(char)) {
    std::size_t start = pos;
    while (pos < s.size() && pred(s[pos])) ++pos;
    return s.substr(start, pos - start);
  }
};

bool is_digit_or_slash(char c) { return (c >= '0' && c <= '9') || c == '/'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

}  // namespace

MultiPoly MultiPoly::parse(const std::string& raw) {
  // Trim outer whitespace only; interior spacing is significant.
  std::size_t b = raw.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) raise(ErrorCode::ParseError, "empty polynomial text");
  std::size_t e = raw.find_last_not_of(" \t\r\n");
  std::string text = raw.substr(b, e - b + 1);

  if (text == "0") return MultiPoly();

  Scanner sc{text};
  MultiPoly result;
  int term_sign = 1;
  if (sc.consume("-")) term_sign = -1;
  while (true) {
    std::string mag = sc.take_while(is_digit_or_slash);
    if (mag.empty()) raise(ErrorCode::ParseError, "expected coefficient in: " + text);
    Rat coeff = rat_parse(mag) * term_sign;
    Exponents expo = kZeroExponents;
    while (sc.consume(" * ")) {
      std::string name = sc.take_while(is_name_char);
      Var v = var_from_name(name);
      int k = 1;
      if (sc.consume("^")) {
        std::string es = sc.take_while(is_digit);
        if (es.empty()) raise(ErrorCode::ParseError, "expected exponent in: " + text);
        k = std::stoi(es);
      }
      expo[static_cast<int>(v)] += k;
    }
    result.add_term(expo, coeff);
    if (sc.eof()) break;
    if (sc.consume(" + ")) {
      term_sign = 1;
    } else if (sc.consume(" - ")) {
      term_sign = -1;
    } else {
      raise(ErrorCode::ParseError, "unexpected content at position " +
                                       std::to_string(sc.pos) + " in: " + text);
    }
  }
  // Canonical-only contract: the text must be exactly the canonical rendering.
  if (result.to_string() != text) {
    raise(ErrorCode::ParseError, "text is not in canonical form: " + text);
  }
  return result;
}

}  // namespace modecert
