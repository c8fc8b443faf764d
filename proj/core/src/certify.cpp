#include "modecert/certify.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <utility>

#include "modecert/errors.hpp"
#include "modecert/poly_algorithms.hpp"
#include "modecert/standardform.hpp"

namespace modecert {
namespace {

RationalExpr nvar() { return RationalExpr::variable(Var::n); }
RationalExpr lvar() { return RationalExpr::variable(Var::l); }
RationalExpr cnum(long v) { return RationalExpr(Rat(v)); }
RationalExpr cq(const Rat& v) { return RationalExpr(v); }

// a n + b
RationalExpr nlin(long a, long b) { return cnum(a) * nvar() + cnum(b); }
// a n^2 + b n + c
RationalExpr nquad(long a, long b, long c) { return nlin(a, b) * nvar() + cnum(c); }
// a n^3 + b n^2 + c n + d
RationalExpr ncub(long a, long b, long c, long d) { return nquad(a, b, c) * nvar() + cnum(d); }
// cl l + cn n + c0
RationalExpr lnlin(long cl, long cn, long c0) {
  return cnum(cl) * lvar() + cnum(cn) * nvar() + cnum(c0);
}

// Dense univariate polynomial, highest coefficient first.
MultiPoly poly_in(Var v, std::initializer_list<long> coeffs) {
  MultiPoly p;
  for (long c : coeffs) p = p * MultiPoly::variable(v) + MultiPoly(Rat(c));
  return p;
}

// Sparse polynomial in Var::x and Var::l: sum of c * x^xe * l^le.
struct XLTerm {
  int xe;
  int le;
  long c;
};
MultiPoly xl_poly(std::initializer_list<XLTerm> terms) {
  MultiPoly p;
  const MultiPoly X = MultiPoly::variable(Var::x);
  const MultiPoly L = MultiPoly::variable(Var::l);
  for (const auto& t : terms) {
    p = p + MultiPoly::constant(Rat(t.c)) * X.pow(static_cast<unsigned>(t.xe)) *
                L.pow(static_cast<unsigned>(t.le));
  }
  return p;
}

// Sparse polynomial in Var::l and Var::n: sum of c * l^le * n^ne.
struct LNTerm {
  int le;
  int ne;
  long c;
};
MultiPoly ln_poly(std::initializer_list<LNTerm> terms) {
  MultiPoly p;
  const MultiPoly L = MultiPoly::variable(Var::l);
  const MultiPoly N = MultiPoly::variable(Var::n);
  for (const auto& t : terms) {
    p = p + MultiPoly::constant(Rat(t.c)) * L.pow(static_cast<unsigned>(t.le)) *
                N.pow(static_cast<unsigned>(t.ne));
  }
  return p;
}

std::string var_label(Var v) {
  switch (v) {
    case Var::n: return "n";
    case Var::l: return "l";
    case Var::x: return "x";
    case Var::T: return "T";
    default: return "v" + std::to_string(static_cast<int>(v));
  }
}

// Keep only the lower bounds for variables the polynomial actually carries;
// every carried variable must be covered.
std::map<Var, Rat> restrict_lows(const MultiPoly& p, const std::map<Var, Rat>& lows) {
  std::map<Var, Rat> shifts;
  for (Var v : p.variables()) {
    auto it = lows.find(v);
    if (it == lows.end()) {
      raise(ErrorCode::InternalError,
            "no domain lower bound supplied for variable " + var_label(v));
    }
    shifts.emplace(v, it->second);
  }
  return shifts;
}

void append_witnesses(Certificate& into, const Certificate& from) {
  into.poly_witnesses.insert(into.poly_witnesses.end(), from.poly_witnesses.begin(),
                             from.poly_witnesses.end());
  for (const auto& kv : from.notes) into.notes.push_back(kv);
}

}  // namespace

// ---------------------------------------------------------------------------
// Stored envelope rows
// ---------------------------------------------------------------------------

BoundRow bound_row(const CaseKey& key) {
  const std::string name = key.name();
  if (name == "01") {
    raise(ErrorCode::UnsupportedCase, "the two-point block needs no envelope row");
  }
  if (name == "10") {
    raise(ErrorCode::NoBoundsRow,
          "the corotational block has no stored envelope row; derive one or defer");
  }
  BoundRow row;
  row.origin = "stored";
  row.n0 = 2;
  row.u = rat(3, 10);
  if (name == "11") {
    row.a_bar = nlin(125, 72) / (cnum(300) * nlin(5, -3));
    row.b_bar = nlin(16, -11) / (cnum(4) * nlin(8, -1));
  } else if (name == "12") {
    row.n0 = 4;
    row.u = rat(1, 3);
    row.a_bar = nlin(75, 266) / (cnum(150) * nlin(6, 1));
    row.b_bar = nlin(25, -11) / (cnum(50) * nlin(1, 1));
  } else if (name == "21") {
    row.a_bar = nlin(100, -71) / (cnum(300) * nlin(4, -5));
    row.b_bar = nlin(50, -37) / (cnum(25) * nlin(4, -1));
  } else if (name == "22") {
    row.n0 = 3;
    row.a_bar = nlin(125, 482) / (cnum(300) * nlin(5, 2));
    row.b_bar = nlin(400, -179) / (cnum(100) * nlin(8, 11));
  } else if (name == "23") {
    row.a_bar = nlin(5, 12) / nlin(60, 0);
    row.b_bar = nlin(125, -96) / (cnum(50) * nlin(5, 1));
  } else if (name == "32") {
    row.a_bar = nlin(125, -121) / (cnum(300) * nlin(5, -7));
    row.b_bar = nlin(400, -319) / (cnum(100) * nlin(8, -3));
  } else if (name == "33") {
    row.n0 = 3;
    row.a_bar = nlin(800, -443) / (cnum(600) * nlin(16, -19));
    row.b_bar = nlin(104, -133) / (cnum(8) * nlin(26, -27));
  } else if (name == "l1") {
    row.a_bar = lnlin(272, 125, -1016) / (cnum(300) * lnlin(5, 5, -23));
    row.b_bar = lnlin(11, 20, -63) / (cnum(20) * lnlin(2, 2, -9));
  } else if (name == "l2") {
    row.a_bar = lnlin(887, 512, -2810) / (cnum(48) * lnlin(128, 128, -515));
    row.b_bar = lnlin(2071, 2800, -9842) / (cnum(200) * lnlin(28, 28, -113));
  } else if (name == "l3") {
    row.a_bar = lnlin(10, 4, -27) / (cnum(12) * lnlin(4, 4, -15));
    row.b_bar = lnlin(5, 13, -29) / (cnum(2) * lnlin(13, 13, -45));
  } else {
    raise(ErrorCode::InternalError, "unknown case key " + name);
  }
  return row;
}

std::map<Var, Rat> case_domain(const CaseKey& key, const Rat& n_min) {
  std::map<Var, Rat> lows{{Var::n, n_min}};
  if (key.is_family()) {
    // The family rows cover degrees beyond the finite list: l >= 4 for the
    // two lower blocks, l >= 3 for the upper one.
    lows[Var::l] = Rat(key.offset == 1 ? 3 : 4);
  }
  return lows;
}

// ---------------------------------------------------------------------------
// Exact iterates and the relative-error recursion
// ---------------------------------------------------------------------------

RationalExpr ratio_iterate_symbolic(const CaseKey& key, int n) {
  if (n < 0) raise(ErrorCode::InvalidIndex, "iterate index must be nonnegative");
  RatioRecurrence rec = ratio_recurrence_case(key);
  RationalExpr r = rec.r0;
  for (int k = 1; k <= n; ++k) {
    RationalExpr Ak = rec.A.substitute(Var::n, cnum(k));
    RationalExpr Bk = rec.B.substitute(Var::n, cnum(k));
    r = (Ak + Bk / r).reduce();
  }
  return r;
}

ErrorModel error_model_case(const CaseKey& key) {
  return error_model(ratio_recurrence_case(key), quasisolution(key));
}

// ---------------------------------------------------------------------------
// Imaginary-axis margin polynomial
// ---------------------------------------------------------------------------

MultiPoly axis_margin(const RationalExpr& f, const RationalExpr& bound) {
  for (const MultiPoly* part : {&bound.num(), &bound.den()}) {
    if (part->contains(Var::x) || part->contains(Var::T)) {
      raise(ErrorCode::InternalError, "the bound must not depend on the spectral variable");
    }
  }
  RationalExpr g = f.reduce();
  MultiPoly F = imaginary_axis_norm2(g.num(), Var::x, Var::T);
  MultiPoly G = imaginary_axis_norm2(g.den(), Var::x, Var::T);
  const MultiPoly& X = bound.num();
  const MultiPoly& Y = bound.den();
  MultiPoly est = F * Y * Y - G * X * X;
  Rat c = est.content();
  if (sign(c) > 0) est = est * MultiPoly::constant(Rat(1) / c);
  return est;
}

MultiPoly axis_margin(const RationalExpr& f, const Rat& bound) {
  return axis_margin(f, RationalExpr(bound));
}

// ---------------------------------------------------------------------------
// Wall partial quotients
// ---------------------------------------------------------------------------

std::vector<RationalExpr> wall_quotients(const MultiPoly& d) {
  const int deg = d.degree(Var::x);
  if (deg <= 0) {
    raise(ErrorCode::DegenerateDivision, "constant polynomial has no Wall expansion");
  }
  MultiPoly g0;  // parity part carrying x^deg
  MultiPoly g1;  // complementary parity part
  for (const auto& [k, coeff] : d.coefficients(Var::x)) {
    MultiPoly term = coeff * MultiPoly::variable(Var::x).pow(static_cast<unsigned>(k));
    if (((deg - k) % 2) == 0) {
      g0 = g0 + term;
    } else {
      g1 = g1 + term;
    }
  }
  RationalExpr prev{g0};
  RationalExpr cur{g1};
  const RationalExpr X = RationalExpr::variable(Var::x);
  std::vector<RationalExpr> out;
  out.reserve(static_cast<size_t>(deg));
  for (int i = 0; i < deg; ++i) {
    if (cur.is_zero()) {
      raise(ErrorCode::DegenerateDivision,
            "parity part vanished before the expansion finished");
    }
    if (prev.den().contains(Var::x) || cur.den().contains(Var::x)) {
      raise(ErrorCode::InternalError, "quotient denominators picked up the series variable");
    }
    const int dp = prev.num().degree(Var::x);
    const int dc = cur.num().degree(Var::x);
    if (dc != dp - 1) {
      raise(ErrorCode::DegenerateDivision,
            "degree must drop by exactly one per partial quotient");
    }
    RationalExpr lead_prev(prev.num().coefficient(Var::x, dp), prev.den());
    RationalExpr lead_cur(cur.num().coefficient(Var::x, dc), cur.den());
    RationalExpr xi = (lead_prev / lead_cur).reduce();
    out.push_back(xi);
    RationalExpr next = (prev - xi * X * cur).reduce();
    prev = cur;
    cur = next;
  }
  if (!cur.is_zero()) {
    raise(ErrorCode::DegenerateDivision, "nonzero remainder after the final quotient");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sign tails
// ---------------------------------------------------------------------------

namespace {

// Shared engine behind strict_sign_tail and the non-strict closure test.
Certificate sign_tail_impl(const RationalExpr& f, int target, const std::map<Var, Rat>& lows,
                           bool strict) {
  RationalExpr g = f.reduce();
  // num * den carries the sign of f wherever f is defined.
  MultiPoly p = g.num() * g.den();
  std::map<Var, Rat> shifts = restrict_lows(p, lows);
  Certificate direct = orthant_sign(p, shifts, target, strict);
  if (direct.pass) {
    direct.fraction_witnesses.push_back(g);
    return direct;
  }
  // The claimed corner may need a deeper shift before the coefficient signs
  // become uniform; cover the skipped integer lattice points exactly.
  for (Var v : {Var::n, Var::l}) {
    if (!p.contains(v)) continue;
    const Rat base = shifts.at(v);
    if (base.get_den() != 1) break;  // integer lattice only
    for (int extra = 1; extra <= 4; ++extra) {
      std::map<Var, Rat> deeper = shifts;
      deeper[v] = base + Rat(extra);
      Certificate tail = orthant_sign(p, deeper, target, strict);
      if (!tail.pass) continue;
      Certificate combined = tail;
      bool points_ok = true;
      for (int k = 0; k < extra && points_ok; ++k) {
        const Rat at = base + Rat(k);
        MultiPoly q = p.substitute(v, MultiPoly::constant(at));
        const std::string label = "point." + var_label(v) + "=" + rat_to_string(at);
        if (q.is_constant()) {
          const int s = sign(q.constant_value());
          points_ok = strict ? s == target : (s == target || s == 0);
          if (points_ok) combined.note(label, rat_to_string(q.constant_value()));
        } else {
          Certificate pt = orthant_sign(q, restrict_lows(q, shifts), target, strict);
          points_ok = pt.pass;
          if (points_ok) {
            combined.note(label, "sign certified");
            append_witnesses(combined, pt);
          }
        }
      }
      if (points_ok) {
        combined.note("deeper_shift." + var_label(v), std::to_string(extra));
        combined.fraction_witnesses.push_back(g);
        return combined;
      }
    }
    break;  // only the leading index variable is bumped
  }
  direct.pass = false;
  if (direct.failure_reason.empty()) {
    direct.failure_reason = "coefficient signs not uniform after admissible shifts";
  }
  return direct;
}

}  // namespace

Certificate strict_sign_tail(const RationalExpr& f, int target, const std::map<Var, Rat>& lows) {
  return sign_tail_impl(f, target, lows, /*strict=*/true);
}

// ---------------------------------------------------------------------------
// Root certificates
// ---------------------------------------------------------------------------

namespace {

// Stored displays for the root data of the quasisolution quadratic, written
// as x = 2(-B +- sqrt(S)).  Keys without a stored display return nullopt.
std::optional<std::pair<RationalExpr, RationalExpr>> stored_root_witnesses(const CaseKey& key) {
  const std::string name = key.name();
  auto family = [](long c2n1, long c20, long c1n2, long c1n1, long c1n0, long c0n3, long c0n2,
                   long c0n1, long c0n0, long d1, long d0) {
    RationalExpr B = lnlin(1, 2, 1);
    RationalExpr S = RationalExpr(ln_poly({{2, 1, c2n1},
                                           {2, 0, c20},
                                           {1, 2, c1n2},
                                           {1, 1, c1n1},
                                           {1, 0, c1n0},
                                           {0, 3, c0n3},
                                           {0, 2, c0n2},
                                           {0, 1, c0n1},
                                           {0, 0, c0n0}})) /
                    nlin(d1, d0);
    return std::make_pair(B, S);
  };
  if (name == "11") return std::make_pair(nlin(2, 3), ncub(6, 35, 75, 51) / nlin(3, 8));
  if (name == "12") return std::make_pair(nlin(2, 2), ncub(2, 17, 13, -2) / nlin(1, 7));
  if (name == "21") return std::make_pair(nlin(2, 4), ncub(4, 40, 107, 111) / nlin(2, 12));
  if (name == "22") return std::make_pair(nlin(2, 3), ncub(12, 98, 162, 105) / nlin(6, 35));
  if (name == "23") return std::make_pair(nlin(2, 3), ncub(8, 116, 194, 129) / nlin(4, 47));
  if (name == "l1") return family(6, 20, 30, 199, 162, 48, 262, 313, 218, 24, 80);
  if (name == "l2") return family(2, 12, 10, 95, 50, 16, 132, 106, 60, 8, 48);
  if (name == "l3") return family(4, 30, 20, 208, 19, 32, 300, 116, -9, 16, 120);
  if (name == "32" || name == "33") {
    auto fam = stored_root_witnesses(CaseKey::family(name == "32" ? -1 : 0));
    return std::make_pair(fam->first.substitute(Var::l, cnum(3)).reduce(),
                          fam->second.substitute(Var::l, cnum(3)).reduce());
  }
  return std::nullopt;  // "10": derived only
}

}  // namespace

Certificate certify_root_negativity(const CaseKey& key) {
  Certificate cert;
  cert.kind = CertKind::RootNegativity;
  RationalExpr quasi = quasisolution(key);  // UnsupportedCase for "01"
  const MultiPoly& num = quasi.num();
  const MultiPoly& den = quasi.den();
  if (num.degree(Var::x) != 2 || den.contains(Var::x)) {
    raise(ErrorCode::InternalError,
          "quasisolution row is not a quadratic in the spectral variable");
  }
  RationalExpr c2(num.coefficient(Var::x, 2), den);
  RationalExpr c1(num.coefficient(Var::x, 1), den);
  RationalExpr c0(num.coefficient(Var::x, 0), den);
  RationalExpr B = (c1 / (cnum(4) * c2)).reduce();
  RationalExpr BBmS = (c0 / (cnum(4) * c2)).reduce();  // B^2 - S
  RationalExpr S = (B * B - BBmS).reduce();
  if (auto stored = stored_root_witnesses(key)) {
    if (!stored->first.equals(B) || !stored->second.equals(S)) {
      raise(ErrorCode::TableMismatch, "derived root data disagrees with the stored display");
    }
    cert.note("display", "matches stored B and S");
  }
  std::map<Var, Rat> lows{{Var::n, Rat(1)}};
  if (key.is_family()) lows[Var::l] = Rat(3);
  const struct {
    const char* label;
    const RationalExpr* value;
  } items[] = {{"lead", &c2}, {"B", &B}, {"S", &S}, {"B2_minus_S", &BBmS}};
  for (const auto& item : items) {
    Certificate part = strict_sign_tail(*item.value, +1, lows);
    if (!part.pass) {
      cert.pass = false;
      cert.failure_reason = std::string("positivity of ") + item.label +
                            " failed: " + part.failure_reason;
      return cert;
    }
    cert.note(std::string("positive.") + item.label, "certified");
    append_witnesses(cert, part);
  }
  cert.fraction_witnesses = {B, S, BBmS};
  cert.note("roots", "x = 2(-B +- sqrt(S)); B, S, B^2 - S all positive, so both roots "
                     "are negative reals");
  cert.note("domain", key.is_family() ? "n >= 1, l >= 3" : "n >= 1");
  cert.pass = true;
  return cert;
}

// ---------------------------------------------------------------------------
// Wall certificates
// ---------------------------------------------------------------------------

namespace {

struct WallDisplay {
  int n0 = 0;
  MultiPoly num;
  MultiPoly den;
  std::vector<RationalExpr> quotients;
};

RationalExpr lpoly(std::initializer_list<long> coeffs) {
  return RationalExpr(poly_in(Var::l, coeffs));
}

std::optional<WallDisplay> stored_wall_display(const CaseKey& key) {
  const std::string name = key.name();
  WallDisplay w;
  auto q = [](const std::string& text) { return RationalExpr(rat_parse(text)); };
  if (name == "11") {
    w.n0 = 2;
    w.num = poly_in(Var::x, {1, 60, 1201, 10152, 37851, 55580, 19635});
    w.den = MultiPoly(Rat(132)) * poly_in(Var::x, {1, 32, 266, 592, 245});
    w.quotients = {q("1/32"), q("64/495"), q("49005/110944"), q("55472/24255")};
    return w;
  }
  if (name == "12") {
    w.n0 = 4;
    w.num = poly_in(Var::x, {1, 120, 5655, 138560, 1969418, 17090160, 92390286, 310928256,
                             641783397, 787540056, 488363755});
    w.den = MultiPoly(Rat(260)) * poly_in(Var::x, {1, 80, 2356, 33584, 256238, 1088432,
                                                   2600580, 3504848, 2391129});
    w.quotients = {q("1/80"),
                   q("400/9681"),
                   q("13388823/162909760"),
                   q("16587243689536/113962657805643"),
                   q("47531204298703335341887/191285306692074662805504"),
                   q("17233719835941124753004235620352/40133868683257984044230012780567"),
                   q("4841112694132470445768992098446182544921/"
                     "6482346130187177237572701069669289181184"),
                   q("141331078934075674653925376/166370224608919186154542269")};
    return w;
  }
  if (name == "21") {
    w.n0 = 2;
    w.num = poly_in(Var::x, {1, 72, 1813, 20400, 108019, 251784, 194103});
    w.den = MultiPoly(Rat(156)) * poly_in(Var::x, {1, 40, 458, 1688, 1701});
    w.quotients = {q("1/40"), q("200/2079"), q("22869/83840"), q("16768/18711")};
    return w;
  }
  if (name == "22") {
    w.n0 = 3;
    w.num = poly_in(Var::x,
                    {1, 96, 3456, 60912, 574976, 2974208, 8253120, 11432704, 6432768});
    w.den = MultiPoly(Rat(208)) *
            poly_in(Var::x, {1, 60, 1216, 10488, 39936, 65984, 40704});
    w.quotients = {q("1/60"),
                   q("150/2603"),
                   q("6775609/53687060"),
                   q("21617253085827/80716560627608"),
                   q("30048789523708855778/51443003963743308357"),
                   q("6388007832023/4930439162424")};
    return w;
  }
  if (name == "33") {
    w.n0 = 3;
    w.num = poly_in(Var::x,
                    {1, 112, 4804, 103408, 1229214, 8329808, 31803380, 63649104, 52369065});
    w.den = MultiPoly(Rat(240)) *
            poly_in(Var::x, {1, 72, 1813, 20400, 109011, 272264, 260055});
    w.quotients = {q("1/72"),
                   q("216/4589"),
                   q("21058921/212658048"),
                   q("117769389008256/605966643139039"),
                   q("17436580563514884792601/45956710403723331293184"),
                   q("27661586227277824/34339650333737805")};
    return w;
  }
  if (name == "l1") {
    w.n0 = 2;
    w.num = xl_poly({{5, 0, 1},    {4, 0, 38},   {3, 0, 440},  {2, 0, 1816}, {1, 0, 2096},
                     {0, 5, 27},   {1, 4, 81},   {0, 4, 306},  {2, 3, 90},   {1, 3, 804},
                     {0, 3, 1224}, {3, 2, 46},   {2, 2, 744},  {1, 2, 2792}, {0, 2, 2104},
                     {4, 1, 11},   {3, 1, 284},  {2, 1, 2008}, {1, 1, 3984}, {0, 1, 1264}});
    w.den = MultiPoly(Rat(12)) * poly_in(Var::l, {2, 7}) *
            xl_poly({{3, 0, 1},
                     {2, 0, 18},
                     {1, 0, 68},
                     {0, 3, 9},
                     {1, 2, 15},
                     {0, 2, 46},
                     {2, 1, 7},
                     {1, 1, 64},
                     {0, 1, 52}});
    w.quotients = {cnum(1) / lpoly({7, 18}),
                   (lpoly({7, 18}) * lpoly({7, 18})) /
                       (cnum(8) * lpoly({12, 84, 197, 153})),
                   lpoly({96, 672, 1576, 1224}) /
                       (lpoly({7, 18}) * lpoly({9, 46, 52, 0}))};
    return w;
  }
  if (name == "l2") {
    w.n0 = 2;
    w.num = xl_poly({{6, 0, 1},     {5, 0, 36},    {4, 0, 364},  {3, 0, 936},  {2, 0, -1536},
                     {1, 0, -4192}, {0, 6, 27},    {1, 5, 108},  {0, 5, 360},  {2, 4, 171},
                     {1, 4, 1236},  {0, 4, 1524},  {3, 3, 136},  {2, 3, 1632}, {1, 3, 4424},
                     {0, 3, 1944},  {4, 2, 57},    {3, 2, 1032}, {2, 2, 4704}, {1, 2, 4440},
                     {0, 2, -1440}, {5, 1, 12},    {4, 1, 312},  {3, 1, 2168}, {2, 1, 3432},
                     {1, 1, -3104}, {0, 1, -3360}});
    w.den = MultiPoly(Rat(12)) * poly_in(Var::l, {2, 7}) *
            xl_poly({{4, 0, 1},
                     {3, 0, 16},
                     {2, 0, 32},
                     {1, 0, -136},
                     {0, 4, 9},
                     {1, 3, 24},
                     {0, 3, 52},
                     {2, 2, 22},
                     {1, 2, 112},
                     {0, 2, 24},
                     {3, 1, 8},
                     {2, 1, 76},
                     {1, 1, 56},
                     {0, 1, -120}});
    RationalExpr c3 = lpoly({19, 106, 177, 81});
    RationalExpr c6 = lpoly({48, 496, 1880, 2956, 955, -1962, -1377});
    w.quotients = {cnum(1) / lpoly({8, 16}),
                   (cnum(8) * lpoly({1, 2}) * lpoly({1, 2})) / c3,
                   (c3 * c3) / (cnum(8) * lpoly({1, 2}) * c6),
                   (cnum(8) * c6) / (lpoly({1, 0}) * lpoly({9, 52, 24, -120}) * c3)};
    return w;
  }
  if (name == "l3") {
    w.n0 = 2;
    w.num = xl_poly({{6, 0, 1},    {5, 0, 36},   {4, 0, 376},  {3, 0, 1224}, {2, 0, 160},
                     {1, 0, -2112}, {0, 6, 27},  {1, 5, 108},  {0, 5, 468},  {2, 4, 171},
                     {1, 4, 1524}, {0, 4, 2832}, {3, 3, 136},  {2, 3, 1896}, {1, 3, 7112},
                     {0, 3, 7112}, {4, 2, 57},   {3, 2, 1128}, {2, 2, 6456}, {1, 2, 12120},
                     {0, 2, 6464}, {5, 1, 12},   {4, 1, 324},  {3, 1, 2552}, {2, 1, 6616},
                     {1, 1, 4256}, {0, 1, 576}});
    w.den = MultiPoly(Rat(12)) * poly_in(Var::l, {2, 7}) *
            xl_poly({{4, 0, 1},
                     {3, 0, 16},
                     {2, 0, 40},
                     {1, 0, -72},
                     {0, 4, 9},
                     {1, 3, 24},
                     {0, 3, 76},
                     {2, 2, 22},
                     {1, 2, 144},
                     {0, 2, 144},
                     {3, 1, 8},
                     {2, 1, 84},
                     {1, 1, 152},
                     {0, 1, -24}});
    RationalExpr c3 = lpoly({19, 110, 189, 89});
    RationalExpr c6 = lpoly({48, 560, 2424, 4732, 3723, 86, -801});
    w.quotients = {cnum(1) / lpoly({8, 16}),
                   (cnum(8) * lpoly({1, 2}) * lpoly({1, 2})) / c3,
                   (c3 * c3) / (cnum(8) * lpoly({1, 2}) * c6),
                   (cnum(8) * c6) / (lpoly({1, 0}) * lpoly({9, 76, 144, -24}) * c3)};
    return w;
  }
  if (name == "32" || name == "23") {
    auto fam = stored_wall_display(CaseKey::family(name == "32" ? -1 : 1));
    const Rat at = Rat(name == "32" ? 3 : 2);
    WallDisplay sub;
    sub.n0 = fam->n0;
    sub.num = fam->num.substitute(Var::l, MultiPoly::constant(at));
    sub.den = fam->den.substitute(Var::l, MultiPoly::constant(at));
    for (const auto& qq : fam->quotients) {
      sub.quotients.push_back(qq.substitute(Var::l, RationalExpr(at)).reduce());
    }
    return sub;
  }
  return std::nullopt;  // "10": no stored display
}

// Lower end of the degree range covered by a family's Wall argument.
Rat wall_l_min(int offset) {
  switch (offset) {
    case -1: return Rat(3);
    case 0: return Rat(4);
    default: return Rat(2);
  }
}

}  // namespace

Certificate certify_wall(const CaseKey& key, int n0) {
  Certificate cert;
  cert.kind = CertKind::Wall;
  RationalExpr r = ratio_iterate_symbolic(key, n0).reduce();
  std::vector<RationalExpr> quots = wall_quotients(r.den());
  if (auto stored = stored_wall_display(key); stored && stored->n0 == n0) {
    RationalExpr display(stored->num, stored->den);
    if (!display.equals(r)) {
      raise(ErrorCode::TableMismatch, "iterate disagrees with its stored display");
    }
    if (stored->quotients.size() != quots.size()) {
      raise(ErrorCode::TableMismatch, "partial quotient count disagrees with the display");
    }
    for (size_t i = 0; i < quots.size(); ++i) {
      if (!stored->quotients[i].equals(quots[i])) {
        raise(ErrorCode::TableMismatch,
              "partial quotient " + std::to_string(i + 1) + " disagrees with the display");
      }
    }
    cert.note("display", "matches stored iterate and quotients");
  }
  std::map<Var, Rat> lows;
  if (key.is_family()) lows[Var::l] = wall_l_min(key.offset);
  for (size_t i = 0; i < quots.size(); ++i) {
    Certificate part = strict_sign_tail(quots[i], +1, lows);
    if (!part.pass) {
      cert.pass = false;
      cert.failure_reason =
          "partial quotient " + std::to_string(i + 1) + " not positive: " + part.failure_reason;
      return cert;
    }
    append_witnesses(cert, part);
  }
  cert.fraction_witnesses = quots;
  cert.note("iterate", std::to_string(n0));
  cert.note("denominator_degree", std::to_string(r.den().degree(Var::x)));
  if (key.is_family()) cert.note("domain.l", rat_to_string(wall_l_min(key.offset)));
  cert.note("conclusion",
            "all partial quotients positive, so the denominator is Hurwitz and the "
            "iterate is analytic on the closed right half plane");
  cert.pass = true;
  return cert;
}

// ---------------------------------------------------------------------------
// Envelope certificates
// ---------------------------------------------------------------------------

namespace {

// Certifies est <= 0 on {T >= 0} x {n >= lows[n]} when plain coefficient
// signs are inconclusive because the squared modulus has a bump whose
// location travels quadratically with the index (T ~ const * n^2), which
// plants positive cross terms that no shift removes.  Substituting
// T = U (n+c)^2 freezes the bump at a fixed U; the quarter plane then splits
// at U = u* into
//   tail: U >= u*        - plain coefficient signs in (U, n),
//   head: U = u*/(1+Z)   - clear (1+Z)^deg, coefficient signs in (Z, n),
// and the two pieces cover T in [0, oo) for every n in the domain (the
// Z-leading coefficient of the head piece is the T = 0 slice).
Certificate scaled_split_nonpositive(const MultiPoly& est, const std::map<Var, Rat>& lows) {
  Certificate cert;
  cert.kind = CertKind::ShiftSign;
  cert.pass = false;
  for (Var v : est.variables())
    if (v != Var::T && v != Var::n) return cert;  // split shape is index-specific
  const int deg = est.degree(Var::T);
  if (deg < 1 || !est.contains(Var::n)) return cert;
  for (long center : {2L, 1L, 3L}) {
    MultiPoly scale =
        (MultiPoly::variable(Var::n) + MultiPoly::constant(Rat(center))).pow(2);
    MultiPoly scaled = est.substitute(Var::T, MultiPoly::variable(Var::T) * scale);
    for (long boundary : {8L, 4L, 16L, 32L}) {
      std::map<Var, Rat> tail_lows = lows;
      tail_lows[Var::T] = Rat(boundary);
      Certificate tail = orthant_sign(scaled, restrict_lows(scaled, tail_lows), -1,
                                      /*strict=*/false);
      if (!tail.pass) continue;
      MultiPoly head = MultiPoly::constant(Rat(0));
      MultiPoly one_plus = MultiPoly::variable(Var::T) + MultiPoly::constant(Rat(1));
      for (const auto& [power, coeff] : scaled.coefficients(Var::T)) {
        Rat factor(1);
        for (int i = 0; i < power; ++i) factor *= Rat(boundary);
        head = head + coeff * MultiPoly::constant(factor) *
                          one_plus.pow(static_cast<unsigned>(deg - power));
      }
      std::map<Var, Rat> head_lows = lows;
      head_lows[Var::T] = Rat(0);
      Certificate head_cert =
          orthant_sign(head, restrict_lows(head, head_lows), -1, /*strict=*/false);
      if (!head_cert.pass) continue;
      cert.pass = true;
      cert.note("scaled_split",
                "T = U (n + " + std::to_string(center) + ")^2 split at U = " +
                    std::to_string(boundary));
      cert.note("scaled_split.tail",
                "coefficient signs of the substituted margin on U >= " +
                    std::to_string(boundary));
      cert.note("scaled_split.head",
                "coefficient signs after U = " + std::to_string(boundary) +
                    "/(1+Z), cleared by (1+Z)^" + std::to_string(deg));
      append_witnesses(cert, tail);
      append_witnesses(cert, head_cert);
      return cert;
    }
  }
  return cert;
}

}  // namespace

Certificate certify_coefficient_bound(const CaseKey& key, const BoundRow& row, bool second) {
  Certificate cert;
  cert.kind = second ? CertKind::BoundB : CertKind::BoundA;
  ErrorModel em = error_model_case(key);
  const RationalExpr& f = second ? em.b : em.a;
  const RationalExpr envelope = second ? row.b_bar : row.a_bar;
  std::map<Var, Rat> lows = case_domain(key, Rat(row.n0));
  Certificate positive = strict_sign_tail(envelope, +1, lows);
  if (!positive.pass) {
    cert.pass = false;
    cert.failure_reason = "envelope not positive on the domain: " + positive.failure_reason;
    return cert;
  }
  MultiPoly est = axis_margin(f, envelope);
  std::map<Var, Rat> shifts = lows;
  shifts[Var::T] = Rat(0);
  Certificate margin = orthant_sign(est, restrict_lows(est, shifts), -1, /*strict=*/false);
  append_witnesses(cert, positive);
  if (margin.pass) {
    cert.pass = true;
    append_witnesses(cert, margin);
  } else {
    Certificate split = scaled_split_nonpositive(est, lows);
    cert.pass = split.pass;
    if (split.pass) {
      append_witnesses(cert, split);
    } else {
      append_witnesses(cert, margin);
    }
  }
  cert.fraction_witnesses.push_back(envelope);
  cert.note("envelope", envelope.to_string());
  cert.note("from", std::to_string(row.n0));
  cert.note("transfer",
            "axis bound plus analyticity extends to the closed right half plane "
            "(Phragmen-Lindelof); analyticity rests on the root and Wall certificates");
  if (!cert.pass) cert.failure_reason = margin.failure_reason;
  return cert;
}

Certificate certify_initial_error(const CaseKey& key, const BoundRow& row) {
  Certificate cert;
  cert.kind = CertKind::BoundE0;
  RationalExpr r = ratio_iterate_symbolic(key, row.n0);
  RationalExpr quasi_at = quasisolution(key).substitute(Var::n, cnum(row.n0)).reduce();
  RationalExpr f = (r / quasi_at - cnum(1)).reduce();
  MultiPoly est = axis_margin(f, row.u);
  std::map<Var, Rat> lows{{Var::T, Rat(0)}};
  if (key.is_family()) lows[Var::l] = case_domain(key, Rat(row.n0)).at(Var::l);
  Certificate margin = orthant_sign(est, restrict_lows(est, lows), -1, /*strict=*/false);
  if (margin.pass) {
    append_witnesses(cert, margin);
    cert.pass = true;
  } else {
    // The margin polynomial may dip positive in a bounded initial stretch of
    // the axis while staying negative overall; split [0, s] off and certify
    // the two pieces separately (tail by coefficient signs, head by a Sturm
    // count).  Univariate margins only.
    std::vector<Var> vars = est.variables();
    if (vars.size() == 1 && vars[0] == Var::T) {
      for (long s = 1; s <= 50; ++s) {
        Certificate tail = orthant_sign(est, {{Var::T, Rat(s)}}, -1, false);
        if (!tail.pass) continue;
        Certificate head = sturm_sign_on_interval(est, Var::T, Rat(0), Rat(s));
        if (!head.pass) continue;
        cert.note("axis_split", std::to_string(s));
        append_witnesses(cert, head);
        append_witnesses(cert, tail);
        cert.pass = true;
        break;
      }
    }
    if (!cert.pass) {
      cert.failure_reason = "margin polynomial not certifiably nonpositive on the axis";
    }
  }
  cert.fraction_witnesses.push_back(f);
  cert.note("iterate", std::to_string(row.n0));
  cert.note("bound", rat_to_string(row.u));
  return cert;
}

Certificate certify_closure(const CaseKey& key, const BoundRow& row) {
  Certificate cert;
  cert.kind = CertKind::Closure;
  if (!(row.u <= rat(1, 3))) {
    cert.pass = false;
    cert.failure_reason = "initial error bound exceeds the propagated bound 1/3";
    return cert;
  }
  RationalExpr h = (cnum(6) * row.a_bar + cnum(3) * row.b_bar - cnum(2)).reduce();
  // Nonpositivity (equality admitted) already propagates the bound: with
  // |e_{n-1}| <= 1/3 the recursion yields |e_n| <= a_bar + b_bar/2 <= 1/3,
  // and 1/3 < 1/2 still excludes the second ratio limit.  The upper family
  // row attains equality at its corner, so strictness would be too much to
  // ask.
  Certificate tail = sign_tail_impl(h, -1, case_domain(key, Rat(row.n0)), /*strict=*/false);
  cert.pass = tail.pass;
  append_witnesses(cert, tail);
  cert.fraction_witnesses.push_back(h);
  cert.note("inequality",
            "y^2 + (b_bar - a_bar - 1) y + a_bar <= 0 at y = 1/3, i.e. 6 a_bar + 3 b_bar <= 2");
  cert.note("kept_bound", "1/3");
  cert.note("initial_bound", rat_to_string(row.u));
  cert.note("excluded_limit", "1/2");
  if (!tail.pass) cert.failure_reason = tail.failure_reason;
  return cert;
}

// ---------------------------------------------------------------------------
// Limit certificates
// ---------------------------------------------------------------------------

namespace {

// Splits a rational expression that is affine in Var::x with constant
// coefficients into (constant, slope).
std::pair<Rat, Rat> affine_in_x(const RationalExpr& f) {
  RationalExpr g = f.reduce();
  if (!g.den().is_constant() || g.num().degree(Var::x) > 1) {
    raise(ErrorCode::InternalError, "expression is not affine in the spectral variable");
  }
  MultiPoly c0 = g.num().coefficient(Var::x, 0);
  MultiPoly c1 = g.num().coefficient(Var::x, 1);
  if (!c0.is_constant() || !c1.is_constant()) {
    raise(ErrorCode::InternalError, "affine coefficients are not constant");
  }
  Rat d = g.den().constant_value();
  return {c0.constant_value() / d, c1.constant_value() / d};
}

bool is_nonnegative_integer(const Rat& v) { return v.get_den() == 1 && sign(v) >= 0; }

}  // namespace

Certificate certify_poincare(const CaseKey& key) {
  Certificate cert;
  cert.kind = CertKind::PoincareLimits;
  RatioRecurrence rec = ratio_recurrence_case(key);  // UnsupportedCase for "01"
  auto [la, lb] = poincare_limits(rec);
  auto [big, small] = characteristic_roots(rec);
  bool limits_ok = la == rat(3, 2) && lb == rat(-1, 2);
  bool roots_ok = big == Rat(1) && small == rat(1, 2) && rat_abs(big) > rat_abs(small);
  cert.note("limit.A", rat_to_string(la));
  cert.note("limit.B", rat_to_string(lb));
  cert.note("characteristic_roots", rat_to_string(big) + ", " + rat_to_string(small));

  // Uniqueness of the analytic branch: the second exponent at the origin of
  // the normal form must not produce a second power-series solution, i.e.
  // 1 - gamma must never be a nonnegative integer.
  RationalExpr gamma = key.is_family() ? heun_form_family(key.offset).gamma
                                       : heun_form(key.l, key.m).gamma;
  RationalExpr w = (cnum(1) - gamma).reduce();
  bool second_exponent_ok = false;
  if (w.is_constant()) {
    second_exponent_ok = !is_nonnegative_integer(w.constant_value());
    cert.note("one_minus_gamma", rat_to_string(w.constant_value()));
  } else if (w.den().is_constant() && w.num().degree(Var::l) == 1) {
    Rat d = w.den().constant_value();
    Rat slope = w.num().coefficient(Var::l, 1).constant_value() / d;
    Rat c0 = w.num().coefficient(Var::l, 0).constant_value() / d;
    // Integer slope with a fractional intercept never hits an integer.
    second_exponent_ok = slope.get_den() == 1 && c0.get_den() != 1;
    cert.note("one_minus_gamma", w.to_string());
  }
  cert.note("second_exponent",
            second_exponent_ok ? "1 - gamma is never a nonnegative integer" : "ambiguous");
  cert.note("conclusion",
            "recursion coefficients converge to (3/2, -1/2); possible ratio limits are "
            "exactly {1, 1/2}; the error bound excludes 1/2");
  cert.pass = limits_ok && roots_ok && second_exponent_ok;
  if (!cert.pass) cert.failure_reason = "limit data disagrees with the expected values";
  return cert;
}

Certificate certify_decay() {
  Certificate cert;
  cert.kind = CertKind::HypergeomDecay;
  HypergeomForm h = hypergeometric_form();
  auto [a0, a1] = affine_in_x(h.a);
  auto [b0, b1] = affine_in_x(h.b);
  auto [c0, c1] = affine_in_x(h.c);
  bool indices_ok = a0 >= Rat(1) && sign(a1) >= 0 && b0 >= Rat(1) && sign(b1) >= 0;
  Rat one_minus_c = Rat(1) - c0;
  bool c_ok = sign(c1) == 0 && !is_nonnegative_integer(one_minus_c);
  cert.note("index.a", h.a.to_string());
  cert.note("index.b", h.b.to_string());
  cert.note("parameter.c", h.c.to_string());
  cert.note("decay", "both indices have real part >= 1 on Re >= 0, so the candidate "
                     "eigenfunction decays like |z|^{-1}; an entire decaying function "
                     "vanishes identically");

  RationalExpr ratio = hypergeom_ratio(h);
  RationalExpr sampled =
      ratio.substitute(Var::x, cnum(0)).substitute(Var::n, cnum(500)).reduce();
  bool sample_ok = sampled.is_constant() &&
                   rat_abs(sampled.constant_value() - Rat(1)) <= rat(1, 50);
  if (sampled.is_constant()) {
    cert.note("sample.n500", rat_to_string(sampled.constant_value()));
  }
  RationalExpr gap = (ratio - cnum(1)).reduce();
  bool tends_ok = gap.num().degree(Var::n) < gap.den().degree(Var::n);
  cert.note("limit", tends_ok ? "coefficient ratio tends to 1" : "ratio limit unresolved");

  cert.fraction_witnesses = {h.a, h.b, h.c, ratio};
  cert.pass = indices_ok && c_ok && sample_ok && tends_ok;
  if (!cert.pass) cert.failure_reason = "decay conditions not satisfied";
  return cert;
}

// ---------------------------------------------------------------------------
// Corotational envelope derivation
// ---------------------------------------------------------------------------

namespace {

// Rational upper bound for sqrt(q), q >= 0 (exact when q is a square of a
// rational with the same denominator).
Rat rat_sqrt_upper(const Rat& q) {
  if (sign(q) < 0) raise(ErrorCode::InternalError, "negative radicand");
  mpz_class ab = q.get_num() * q.get_den();
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), ab.get_mpz_t());
  mpz_class up = (s * s == ab) ? s : mpz_class(s + 1);
  mpz_class den = q.get_den();
  return Rat(up) / Rat(den);
}

// Smallest multiple of 1/scale that is >= q.
Rat round_up_frac(const Rat& q, long scale) {
  mpz_class num = q.get_num() * scale;
  mpz_class den = q.get_den();
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Rat(c) / Rat(scale);
}

// Estimated supremum of |f(i t)| over the axis at integer index n: exact
// maximum of the squared modulus over a sample grid plus the t -> infinity
// limit, square-rooted upward.  The grid combines a fine mesh near the
// origin with a mesh proportional to (n+2)^2, because the squared modulus
// of the error coefficients peaks near T ~ const * n^2.  A guess generator
// only — candidates are certified exactly afterwards.
std::optional<Rat> axis_sup_estimate(const RationalExpr& f, int n) {
  RationalExpr g = f.substitute(Var::n, cnum(n)).reduce();
  MultiPoly F = imaginary_axis_norm2(g.num(), Var::x, Var::T);
  MultiPoly G = imaginary_axis_norm2(g.den(), Var::x, Var::T);
  const int dF = F.degree(Var::T);
  const int dG = G.degree(Var::T);
  if (dF > dG) return std::nullopt;  // unbounded on the axis
  Rat best(0);
  auto visit = [&](const Rat& T) {
    Rat denom = G.eval({{Var::T, T}});
    if (sign(denom) == 0) return;
    Rat value = F.eval({{Var::T, T}}) / denom;
    if (value > best) best = value;
  };
  for (long k = 0; k <= 40; ++k) visit(rat(k, 4));
  const Rat bump_scale = Rat(static_cast<long>(n + 2) * (n + 2)) / Rat(8);
  for (long j = 1; j <= 144; ++j) visit(bump_scale * Rat(j));
  if (dF == dG && dF >= 0) {
    Rat lead = F.coefficient(Var::T, dF).constant_value() /
               G.coefficient(Var::T, dG).constant_value();
    if (lead > best) best = lead;
  }
  return rat_sqrt_upper(best);
}

// Smallest multiple of 1/scale that is <= q.
Rat round_down_frac(const Rat& q, long scale) {
  mpz_class num = q.get_num() * scale;
  mpz_class den = q.get_den();
  mpz_class c;
  mpz_fdiv_q(c.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Rat(c) / Rat(scale);
}

bool row_certifies(const CaseKey& key, const BoundRow& row) {
  if (!(row.u <= rat(1, 3))) return false;
  if (!certify_closure(key, row).pass) return false;
  if (!certify_wall(key, row.n0).pass) return false;
  if (!certify_coefficient_bound(key, row, false).pass) return false;
  if (!certify_coefficient_bound(key, row, true).pass) return false;
  if (!certify_initial_error(key, row).pass) return false;
  return true;
}

}  // namespace

std::optional<BoundRow> derive_corotational_row() {
  const CaseKey key = CaseKey::finite(1, 0);
  ErrorModel em = error_model_case(key);
  std::vector<BoundRow> candidates;

  // The neighbouring stored row first: the block differs from "11" only in
  // the Casimir index, so its envelope is the natural first guess.  (It is
  // rejected by certification: at this block the second coefficient already
  // exceeds that envelope at the starting index.)
  {
    BoundRow neighbour = bound_row(CaseKey::finite(1, 1));
    neighbour.origin = "derived";
    candidates.push_back(neighbour);
  }

  // Fitted envelope shapes.  Along the axis the second coefficient tends to
  // 1/2 from below and the first stays of order 1/n near the origin but
  // approaches a positive constant along the travelling bump T ~ 8 n^2, so
  // the templates
  //     a_bar = ka (2n+1)/(2n),     b_bar = 1/2 - kb/(n+1)
  // carry the right asymptotics.  Closure (6 a_bar + 3 b_bar <= 2) forces
  // ka <= 1/12 in the limit, and truth of the b-envelope forces kb at or
  // below the limiting axis gap; both constants are fitted against exact
  // sampled suprema, then pushed toward the closure boundary, and every
  // candidate is certified exactly before being accepted.
  std::vector<int> sample_indices = {2,  3,  4,  5,  6,  7,  8,  10, 12,
                                     14, 16, 20, 24, 32, 48, 64, 96};
  Rat ka_fit(0);
  Rat kb_fit = rat(1, 2);
  bool fit_ok = true;
  for (int n : sample_indices) {
    auto sup_a = axis_sup_estimate(em.a, n);
    auto sup_b = axis_sup_estimate(em.b, n);
    if (!sup_a || !sup_b || *sup_b >= rat(1, 2)) {
      fit_ok = false;
      break;
    }
    // a-template needs ka >= sup_a * 2n/(2n+1); b-template needs
    // kb <= (n+1)(1/2 - sup_b).
    Rat ra = *sup_a * rat(2L * n, 2L * n + 1);
    Rat gb = (rat(1, 2) - *sup_b) * Rat(n + 1);
    if (ra > ka_fit) ka_fit = ra;
    if (gb < kb_fit) kb_fit = gb;
  }

  if (fit_ok) {
    const Rat ka_closure = rat(1, 12);
    Rat ka_tight = round_up_frac(ka_fit * rat(51, 50), 600);
    Rat ka_mid = round_up_frac((ka_tight + ka_closure) / Rat(2), 600);
    std::vector<Rat> ka_set;
    for (const Rat& ka : {ka_tight, ka_mid, ka_closure})
      if (ka > Rat(0) && ka <= ka_closure &&
          std::find(ka_set.begin(), ka_set.end(), ka) == ka_set.end())
        ka_set.push_back(ka);

    Rat kb_safe = round_down_frac(kb_fit * rat(49, 50), 600);
    std::vector<Rat> kb_set;
    for (const Rat& kb : {std::min(kb_safe, rat(1, 4)), rat(1, 5)})
      if (kb > Rat(0) && std::find(kb_set.begin(), kb_set.end(), kb) == kb_set.end())
        kb_set.push_back(kb);

    for (int n0 : {2, 3, 4}) {
      for (const Rat& ka : ka_set) {
        for (const Rat& kb : kb_set) {
          BoundRow shaped;
          shaped.origin = "derived";
          shaped.n0 = n0;
          shaped.a_bar =
              ((cq(ka * Rat(2)) * nvar() + cq(ka)) / (cnum(2) * nvar())).reduce();
          shaped.b_bar =
              (((nvar() + cnum(1)) * cq(rat(1, 2)) - cq(kb)) / (nvar() + cnum(1))).reduce();
          for (const Rat& u : {rat(3, 10), rat(1, 3)}) {
            shaped.u = u;
            candidates.push_back(shaped);
          }
        }
      }
    }
  }

  for (const BoundRow& cand : candidates) {
    if (row_certifies(key, cand)) return cand;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Case assembly
// ---------------------------------------------------------------------------

CaseReport verify_case(const CaseKey& key, CorotationalPolicy policy) {
  CaseReport report;
  report.key = key;
  const std::string name = key.name();

  if (name == "01") {
    Certificate decay = certify_decay();
    report.certified = decay.pass;
    report.summary = std::string(name) + ": decay certificate " +
                     (decay.pass ? "PASS" : ("FAIL (" + decay.failure_reason + ")"));
    report.certificates.push_back(std::move(decay));
    return report;
  }

  report.certificates.push_back(certify_root_negativity(key));
  report.certificates.push_back(certify_poincare(key));

  std::optional<BoundRow> row;
  if (name == "10") {
    if (policy == CorotationalPolicy::AutoDerive) row = derive_corotational_row();
    if (!row) report.external = true;
  } else {
    row = bound_row(key);
  }

  if (row) {
    report.certificates.push_back(certify_wall(key, row->n0));
    report.certificates.push_back(certify_coefficient_bound(key, *row, false));
    report.certificates.push_back(certify_coefficient_bound(key, *row, true));
    report.certificates.push_back(certify_initial_error(key, *row));
    report.certificates.push_back(certify_closure(key, *row));
    report.row = row;
  }

  bool all = true;
  std::ostringstream failed;
  for (const Certificate& c : report.certificates) {
    if (!c.pass) {
      if (!all) failed << ", ";
      failed << to_string(c.kind);
      all = false;
    }
  }
  report.certified = all && !report.external;

  std::ostringstream out;
  out << name << ": ";
  if (report.external) {
    out << "envelope chain delegated to the published corotational result; "
        << (all ? "remaining certificates PASS" : "FAIL (" + failed.str() + ")");
  } else if (report.certified) {
    out << "all certificates PASS (from n = " << row->n0 << ", envelope "
        << row->origin << ")";
  } else {
    out << "FAIL (" << failed.str() << ")";
  }
  report.summary = out.str();
  return report;
}

std::vector<CaseReport> verify_all(CorotationalPolicy policy) {
  std::vector<CaseReport> reports;
  for (const CaseKey& key : all_cases()) reports.push_back(verify_case(key, policy));
  return reports;
}

}  // namespace modecert
