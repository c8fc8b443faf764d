#pragma once
// Orchestration: run the exact certificate suite and the numeric
// cross-checks across every block, render deterministic reports, and export
// the supplementary CSV files.

#include <string>
#include <vector>

#include "modecert/cases.hpp"
#include "modecert/certify.hpp"
#include "modecert/numeric.hpp"
#include "modecert/rational.hpp"

namespace modecert {

// Spectral sample points for the numeric cross-checks: 0, 1, 2i, 1+3i, 10i.
std::vector<CRat> default_lambda_grid();

struct RunConfig {
  std::vector<CaseKey> cases = all_cases();
  std::vector<CRat> lambda_samples = default_lambda_grid();
  int tail_length = 2000;         // last sampled index N of each numeric run
  double ratio_tolerance = 0.01;  // allowed |r_N - 1|
  std::string output_dir;        // when nonempty: reports + per-run time series
  CorotationalPolicy corotational_policy = CorotationalPolicy::AutoDerive;
  int workers = 0;  // bounded case-level parallelism; 0 = hardware concurrency
};

// Everything established for one block.
struct CaseOutcome {
  CaseReport report;                       // exact certificate suite
  std::vector<ConvergenceReport> samples;  // one per spectral sample
  bool pass = false;
  std::string summary;  // one line: verdict + how convergence was established
};

struct Report {
  std::vector<CaseOutcome> outcomes;  // in config order
  int modes_checked = 0;       // catalogue profiles evaluated on the grid
  bool catalogue_clean = false;  // every catalogue residual exactly zero
  bool theorem_verified = false;
  std::string verdict;       // "THEOREM-VERIFIED" or "NOT-VERIFIED"
  std::string policy_note;   // how the corotational block was handled
  std::string generated_at;  // wall-clock metadata; never part of the body
};

// Runs everything in the config with a bounded worker pool.  The outcome
// vector and both renderings depend only on the config's verification fields
// (cases, spectral samples, tail length, tolerance, policy), never on the
// worker count or scheduling order.
Report run_all(const RunConfig& config);

// Deterministic renderings (no timestamps, no machine details).
std::string report_text(const Report& report);
std::string report_json_text(const Report& report);

// Writes the supplement CSV of one block: rows `name,expression` with the
// ten variables A, B, n0, rn0, rtilde, a, b, esta, estb, esterror, the
// spectral variable spelled x, every expression in canonical text form.
// esta/estb are the nonpositivity margins F y^2 - G x^2 of the envelope
// bounds with n -> n + n0 applied (families also l -> l + 4, 4, 3 for l1,
// l2, l3); esterror is the margin of the initial error at n = n0 with
// l -> l + 0, 4, 2.  The block must certify first (NotCertified otherwise);
// the two-point block has nothing to export (UnsupportedCase).
void export_supplement(const CaseKey& key, const std::string& path);

// The canonical ten-file set 11.csv ... 33.csv, l1.csv, l2.csv, l3.csv
// (every block except the two-point and corotational ones) written into
// `dir`.  Returns the paths written.
std::vector<std::string> export_supplement_all(const std::string& dir);

}  // namespace modecert
