#include "modecert/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "json.hpp"
#include "modecert/certify.hpp"
#include "modecert/errors.hpp"
#include "modecert/multipoly.hpp"
#include "modecert/odesystem.hpp"
#include "modecert/recurrence.hpp"

namespace modecert {
namespace {

using F = boost::multiprecision::cpp_bin_float_quad;
using CF = boost::multiprecision::cpp_complex_quad;

F to_f(const mpz_class& z) { return F(z.get_str()); }

F to_f(const Rat& q) { return to_f(q.get_num()) / to_f(q.get_den()); }

CF to_cf(const CRat& z) { return CF(to_f(z.re), to_f(z.im)); }

std::complex<double> to_cd(const CRat& z) {
  return std::complex<double>(z.re.get_d(), z.im.get_d());
}

std::complex<double> to_cd(const CF& z) {
  return std::complex<double>(z.real().convert_to<double>(), z.imag().convert_to<double>());
}

// Polynomial value at a complex point; only the index and spectral variables
// may appear.
CF eval_poly_cf(const MultiPoly& p, const CF& nval, const CF& xval) {
  CF acc(0);
  for (const auto& [expo, coeff] : p.terms()) {
    CF term(to_f(coeff), F(0));
    for (int i = 0; i < static_cast<int>(expo.size()); ++i) {
      if (expo[i] == 0) continue;
      const Var v = static_cast<Var>(i);
      const CF* base = nullptr;
      if (v == Var::n) {
        base = &nval;
      } else if (v == Var::x) {
        base = &xval;
      } else {
        raise(ErrorCode::InternalError,
              "float evaluation only handles the index and spectral variables");
      }
      for (int k = 0; k < expo[i]; ++k) term *= *base;
    }
    acc += term;
  }
  return acc;
}

std::optional<CF> eval_expr_cf(const RationalExpr& f, const CF& nval, const CF& xval) {
  CF den = eval_poly_cf(f.den(), nval, xval);
  if (abs(den) == F(0)) return std::nullopt;
  return eval_poly_cf(f.num(), nval, xval) / den;
}

std::optional<CRat> eval_expr_crat(const RationalExpr& f, const CRat& nval, const CRat& xval) {
  std::map<Var, CRat> at{{Var::n, nval}, {Var::x, xval}};
  CRat den = f.den().eval_complex(at);
  if (den.is_zero()) return std::nullopt;
  return f.num().eval_complex(at) / den;
}

// First index the error ceiling applies to: the envelope row's n0.  The
// corotational block has no stored row, so its derived row decides.
int resolve_n0(const CaseKey& key) {
  if (key.kind == CaseKey::Kind::Finite && key.l == 1 && key.m == 0) {
    static const std::optional<BoundRow> derived = derive_corotational_row();
    return derived ? derived->n0 : 2;
  }
  return bound_row(key).n0;
}

// Phases of one sampling run; early returns leave the report truncated and
// the caller finalizes verdict fields.
void run_phases(const RatioRecurrence& rec, const RationalExpr& quasi, const CRat& lambda,
                int N, ConvergenceReport& rep, Rat& max_norm2) {
  const int cutoff = std::min(N, kExactCutoff);

  std::vector<CRat> exact;
  try {
    exact = ratio_iterates_complex(rec, lambda, cutoff + 1);
  } catch (const EngineError& err) {
    if (err.code() == ErrorCode::RatioBreakdown) {
      rep.anomalies.push_back(std::string("ratio breakdown during exact iteration: ") +
                              err.what());
      return;
    }
    throw;
  }

  // Exact prefix: series points and exact relative errors.
  for (int n = 0; n <= cutoff; ++n) {
    const CRat& r = exact[n];
    auto rt = eval_expr_crat(quasi, CRat(rat(n)), lambda);
    if (!rt || rt->is_zero()) {
      rep.anomalies.push_back("comparison row vanished at n = " + std::to_string(n));
      return;
    }
    CRat e = r / *rt - CRat(rat(1));
    Rat n2 = e.norm2();
    if (n >= rep.n0 && n2 > max_norm2) max_norm2 = n2;
    rep.series.push_back({n, to_cd(r), std::sqrt(n2.get_d())});
  }

  // Independent float run over the same prefix; the exact values are the
  // reference, so any drift past the agreement threshold is an anomaly.
  const CF lam_cf = to_cf(lambda);
  auto r0f = eval_expr_cf(rec.r0, CF(0), lam_cf);
  if (!r0f) {
    rep.anomalies.push_back("float opening ratio hit a vanishing denominator");
    return;
  }
  CF rf = *r0f;
  int disagreements = 0;
  double worst_rel = 0.0;
  int worst_n = 0;
  for (int n = 0; n <= cutoff; ++n) {
    if (n > 0) {
      auto A = eval_expr_cf(rec.A, CF(n), lam_cf);
      auto B = eval_expr_cf(rec.B, CF(n), lam_cf);
      if (!A || !B) {
        rep.anomalies.push_back("float coefficient hit a vanishing denominator at n = " +
                                std::to_string(n));
        return;
      }
      if (abs(rf) == F(0)) {
        rep.anomalies.push_back("ratio vanished during float iteration at n = " +
                                std::to_string(n - 1));
        return;
      }
      rf = *A + *B / rf;
    }
    CF ref = to_cf(exact[n]);
    double rel = (abs(rf - ref) / abs(ref)).convert_to<double>();
    if (rel > kOverlapAgreement) {
      ++disagreements;
      if (rel > worst_rel) {
        worst_rel = rel;
        worst_n = n;
      }
    }
  }
  if (disagreements > 0) {
    std::ostringstream msg;
    msg << "exact/float overlap disagreement at " << disagreements << " of " << (cutoff + 1)
        << " indices (worst " << std::scientific << std::setprecision(3) << worst_rel
        << " at n = " << worst_n << ")";
    rep.anomalies.push_back(msg.str());
    return;
  }

  // Float continuation of the exact prefix for the long tail.
  CF r = to_cf(exact[cutoff]);
  for (int n = cutoff + 1; n <= N; ++n) {
    auto A = eval_expr_cf(rec.A, CF(n), lam_cf);
    auto B = eval_expr_cf(rec.B, CF(n), lam_cf);
    if (!A || !B) {
      rep.anomalies.push_back("float coefficient hit a vanishing denominator at n = " +
                              std::to_string(n));
      return;
    }
    r = *A + *B / r;
    if (abs(r) == F(0)) {
      rep.anomalies.push_back("ratio vanished during float continuation at n = " +
                              std::to_string(n));
      return;
    }
    auto rtf = eval_expr_cf(quasi, CF(n), lam_cf);
    if (!rtf || abs(*rtf) == F(0)) {
      rep.anomalies.push_back("comparison row vanished at n = " + std::to_string(n));
      return;
    }
    CF e = r / *rtf - CF(1);
    double ae = abs(e).convert_to<double>();
    rep.series.push_back({n, to_cd(r), ae});
  }
}

ConvergenceReport run_sample(const CaseKey& key, const CRat& lambda, int N, double tolerance,
                             const RationalExpr& quasi) {
  if (key.is_family() || key.l <= 0) {
    raise(ErrorCode::UnsupportedCase, "convergence sampling needs a finite block with l > 0");
  }
  if (N < 1) raise(ErrorCode::InternalError, "sample_convergence: N must be at least 1");

  ConvergenceReport rep;
  rep.key = key;
  rep.lambda = lambda;
  rep.N = N;
  rep.tolerance = tolerance;
  rep.n0 = resolve_n0(key);

  RatioRecurrence rec = ratio_recurrence_case(key);
  Rat max_norm2(-1);
  run_phases(rec, quasi, lambda, N, rep, max_norm2);

  double max_err = max_norm2 >= 0 ? std::sqrt(max_norm2.get_d()) : 0.0;
  for (const auto& p : rep.series) {
    if (p.n > kExactCutoff && p.abs_error > max_err) max_err = p.abs_error;
  }
  rep.max_abs_error_after_n0 = max_err;
  if (!rep.series.empty()) {
    rep.final_ratio = rep.series.back().r;
    rep.final_distance = std::abs(rep.final_ratio - std::complex<double>(1.0, 0.0));
  }
  const bool complete = static_cast<int>(rep.series.size()) == N + 1;
  rep.pass = rep.anomalies.empty() && complete && rep.final_distance <= tolerance &&
             rep.max_abs_error_after_n0 <= 1.0 / 3.0 + kErrorSlack;
  return rep;
}

}  // namespace

ConvergenceReport sample_convergence(const CaseKey& key, const CRat& lambda, int N,
                                     double tolerance) {
  return run_sample(key, lambda, N, tolerance, quasisolution(key));
}

ConvergenceReport sample_convergence_against(const CaseKey& key, const CRat& lambda, int N,
                                             double tolerance,
                                             const RationalExpr& comparison_row) {
  return run_sample(key, lambda, N, tolerance, comparison_row);
}

void write_convergence_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::InternalError, "cannot open " + path + " for writing");
  out << "n,ratio_re,ratio_im,abs_error\n";
  out << std::setprecision(17);
  for (const auto& p : report.series) {
    out << p.n << ',' << p.r.real() << ',' << p.r.imag() << ',' << p.abs_error << '\n';
  }
}

void write_convergence_json(const ConvergenceReport& report, const std::string& path) {
  nlohmann::json j;
  j["case"] = report.key.name();
  j["lambda"] = {{"re", report.lambda.re.get_str()}, {"im", report.lambda.im.get_str()}};
  j["N"] = report.N;
  j["n0"] = report.n0;
  j["tolerance"] = report.tolerance;
  j["final_ratio"] = {{"re", report.final_ratio.real()}, {"im", report.final_ratio.imag()}};
  j["final_distance"] = report.final_distance;
  j["max_abs_error_after_n0"] = report.max_abs_error_after_n0;
  j["anomalies"] = report.anomalies;
  j["pass"] = report.pass;
  j["points"] = report.series.size();
  std::ofstream out(path);
  if (!out) raise(ErrorCode::InternalError, "cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

Rat pde_residual_grid(const VectorField& profile, const Rat& lambda, int steps) {
  if (steps < 1) raise(ErrorCode::InternalError, "pde_residual_grid: steps must be positive");
  VectorField res = pde_residual(profile, lambda);
  Rat best(0);
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dz = -1; dz <= 1; ++dz) {
        const int norm = dx * dx + dy * dy + dz * dz;
        if (norm == 0) continue;
        const Rat scale = norm == 1 ? rat(1, 2) : norm == 2 ? rat(2, 5) : rat(1, 3);
        for (int j = 1; j <= steps; ++j) {
          Rat t(scale * rat(j) / rat(steps));
          std::map<Var, Rat> at{
              {Var::y1, Rat(t * dx)}, {Var::y2, Rat(t * dy)}, {Var::y3, Rat(t * dz)}};
          for (int c = 0; c < 3; ++c) {
            Rat v(abs(res.comp[c].eval(at)));
            if (v > best) best = v;
          }
        }
      }
    }
  }
  return best;
}

Rat pde_residual_grid(const Mode& mode, int steps) {
  return pde_residual_grid(mode.profile, mode.lambda, steps);
}

}  // namespace modecert
