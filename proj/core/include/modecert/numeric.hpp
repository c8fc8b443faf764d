#pragma once
// Floating-point and exact-sampling cross-checks that the certified claims
// manifest concretely: ratio convergence at sampled spectral values, relative
// error trajectories against the quasisolution rows, and full PDE-level
// residuals of the mode catalogue on a rational grid.
//
// Sampling runs use hybrid precision: exact complex-rational iterates up to
// index kExactCutoff (series coefficients grow quickly, exactness where the
// certificates reference values), then IEEE binary128 floating continuation
// for the long tail.  The crossover is validated by running the float
// recursion from the start and checking agreement with the exact prefix to
// kOverlapAgreement relative error; any disagreement is reported as an
// anomaly and fails the run.

#include <complex>
#include <string>
#include <vector>

#include "modecert/cases.hpp"
#include "modecert/rational.hpp"
#include "modecert/rational_expr.hpp"
#include "modecert/spherical.hpp"

namespace modecert {

// Pinned numeric tolerances.
inline constexpr double kErrorSlack = 1e-9;        // slack over the 1/3 error ceiling
inline constexpr double kOverlapAgreement = 1e-10; // exact/float relative agreement
inline constexpr int kExactCutoff = 300;           // last index iterated exactly

// One sampled index of a convergence run.
struct ConvergencePoint {
  int n = 0;
  std::complex<double> r;   // ratio iterate r_n
  double abs_error = 0.0;   // |e_n| = |r_n / rtilde_n - 1|
};

// Outcome of one (case, lambda) sampling run.
struct ConvergenceReport {
  CaseKey key;
  CRat lambda;
  int N = 0;                 // requested tail length
  int n0 = 0;                // first index the error ceiling applies to
  double tolerance = 0.0;    // allowed |r_N - 1|
  std::complex<double> final_ratio;       // last computed iterate
  double final_distance = 0.0;            // |final_ratio - 1|
  double max_abs_error_after_n0 = 0.0;    // max over n0 <= n <= N of |e_n|
  std::vector<std::string> anomalies;     // breakdowns, overlap disagreements
  bool pass = false;         // complete run, no anomalies, both bounds met
  std::vector<ConvergencePoint> series;   // n = 0..N (truncated on anomaly)
};

// Runs the ratio recursion of a finite block with l > 0 at the given spectral
// value and measures the relative error against the stored quasisolution row.
// pass requires the full series, no anomalies, |r_N - 1| <= tolerance and
// max |e_n| <= 1/3 + kErrorSlack for n >= n0.  The convergence claims hold
// for Re lambda >= 0; runs outside that half plane are permitted but expected
// to fail.  Throws UnsupportedCase for families and for the two-point block.
ConvergenceReport sample_convergence(const CaseKey& key, const CRat& lambda, int N,
                                     double tolerance);

// Same run measured against an arbitrary comparison row instead of the stored
// quasisolution (miscalibration control: a wrong row must push the error
// beyond the ceiling or vanish along the run, which is reported).
ConvergenceReport sample_convergence_against(const CaseKey& key, const CRat& lambda, int N,
                                             double tolerance,
                                             const RationalExpr& comparison_row);

// Time series as CSV (columns n, ratio_re, ratio_im, abs_error) and the run
// summary as JSON.
void write_convergence_csv(const ConvergenceReport& report, const std::string& path);
void write_convergence_json(const ConvergenceReport& report, const std::string& path);

// Exact maximum of |residual component| of the full linearized stationary
// system over a rational grid: the 26 lattice directions {-1,0,1}^3 \ {0}
// (axes scaled by 1/2, edge diagonals by 2/5, corner diagonals by 1/3, so
// every ray stays inside the unit ball with radius at most 9/10) sampled at
// radii j/steps, j = 1..steps, avoiding the coordinate singularity at the
// origin.  Differentiation is exact polynomial calculus and evaluation is
// rational, so catalogue modes return exactly zero.
Rat pde_residual_grid(const VectorField& profile, const Rat& lambda, int steps);
Rat pde_residual_grid(const Mode& mode, int steps);

}  // namespace modecert
