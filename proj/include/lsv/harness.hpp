#pragma once

#include <string>
#include <vector>

#include "lsv/exact.hpp"
#include "lsv/parallel.hpp"

namespace lsv {

enum class ExperimentModel { IidRademacher, RowRegular, GaussianBaseline };

std::string experiment_model_name(ExperimentModel m);
ExperimentModel experiment_model_from_name(const std::string& name);

struct ExperimentConfig {
  ExperimentModel model = ExperimentModel::IidRademacher;
  std::vector<int> n_list{20};
  i64 trials = 1000;
  // sorted ascending, entries >= 0; eta = 0 is the exact-singularity
  // indicator column (integer models only), not a CDF evaluation.
  std::vector<double> eta_grid{0.01};
  u64 seed = 1;
  double tol = 1e-10;  // spectral convergence tolerance
  std::string profile = "desk";
  std::string out_path;

  void check_invariants() const;
};

// JSON round-trip; missing fields keep their defaults, so a config
// file only has to name what it overrides.
ExperimentConfig experiment_config_from_json(const std::string& text);
std::string experiment_config_to_json(const ExperimentConfig& config);

struct TailCell {
  ExperimentModel model = ExperimentModel::IidRademacher;
  int n = 0;
  double eta = 0;
  i64 trials = 0;
  i64 hits = 0;
  double p_hat = 0;
  // binomial standard error; zero-hit cells carry the one-sided 95%
  // Clopper-Pearson upper bound 1 - 0.05^(1/trials) instead, so a 0
  // never looks like certainty.
  double se = 0;
  double reference = 0;  // eta n^1.5, eta n^2, or the Gaussian limit law
  i64 nonconverged = 0;  // SVD residual checks failed (not in the CSV)
};

struct TailCurve {
  std::vector<TailCell> cells;
};

// One spectral solve per trial; the whole eta grid is evaluated on
// the same s_min. Deterministic given config.seed for either policy.
TailCurve run_tail_experiment(const ExperimentConfig& config,
                              ExecPolicy policy = ExecPolicy::OpenMP);

// Fixed schema: model,n,eta,trials,hits,p_hat,se,reference.
std::string tail_curve_csv(const TailCurve& curve);

// Exact singular fraction by full enumeration: 2^(n^2) sign matrices
// (n <= 5) or C(n, n/2)^n row-regular matrices (n <= 4, n even).
Rat exact_singularity_frequency(int n, ExperimentModel model);

// n (log(100 c_of_n) + log(rho_cap)): the assembled union bound over
// the integer ball, reported in natural log space.
double union_bound_report_log(double c_of_n, i64 n, double rho_cap);

struct CheckLine {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  u64 seed = 0;
  bool pass = false;
  std::vector<CheckLine> checks;

  std::string to_json() const;  // deterministic rendering
};

std::vector<std::string> registered_suites();

// Runs one registered invariant suite; unknown names throw.
SuiteReport run_invariant_suite(const std::string& name, u64 seed);

// Log-log SVG of p_hat vs eta with the reference column as a dashed
// companion line, one series per (model, n). Pure function of the
// CSV text; rejects schema drift.
std::string emit_plot_svg(const std::string& csv_text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Shortest round-trip decimal form (%.17g trimmed); all CSV and JSON
// numbers go through this so reruns are byte-identical.
std::string fmt_double(double x);

}  // namespace lsv
