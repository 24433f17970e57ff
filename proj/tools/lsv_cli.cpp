#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lsv/anticonc.hpp"
#include "lsv/errors.hpp"
#include "lsv/exponents.hpp"
#include "lsv/harness.hpp"
#include "lsv/models.hpp"
#include "lsv/slice_stats.hpp"
#include "lsv/spectral.hpp"
#include "lsv/structure.hpp"

namespace {

using namespace lsv;

void write_or_print(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_text_file(out, text);
    std::fprintf(stderr, "wrote %s\n", out.c_str());
  }
}

std::vector<double> read_vector_file(const std::string& path) {
  const std::string text = read_text_file(path);
  std::vector<double> v;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    char* end = nullptr;
    const double x = std::strtod(line.c_str(), &end);
    if (end == line.c_str()) {
      throw PreconditionError("vector file", "unparsable line '" + line + "'");
    }
    v.push_back(x);
  }
  if (v.empty()) throw PreconditionError("vector file", "no coordinates in " + path);
  return v;
}

std::vector<i64> to_integer_vector(const std::vector<double>& v) {
  std::vector<i64> out;
  out.reserve(v.size());
  for (double x : v) {
    const i64 r = static_cast<i64>(std::llround(x));
    if (static_cast<double>(r) != x) {
      throw PreconditionError("integer vector", "non-integer coordinate " +
                                                    fmt_double(x));
    }
    out.push_back(r);
  }
  return out;
}

int cmd_sample(const std::string& model, int n, u64 seed,
               const std::string& out) {
  std::string text;
  if (model == "iid_rademacher") {
    text = matrix_to_text(sample_rademacher(n, seed));
  } else if (model == "row_regular") {
    text = matrix_to_text(sample_row_regular(n, seed));
  } else if (model == "q_two_step") {
    text = matrix_to_text(sample_q_via_base(n, seed));
  } else if (model == "base") {
    text = base_to_text(sample_base(n, seed));
  } else if (model == "gaussian_baseline") {
    const Eigen::MatrixXd m = sample_gaussian(n, seed);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        text += fmt_double(m(i, j));
        text += (j + 1 == n) ? '\n' : ' ';
      }
    }
  } else {
    throw PreconditionError("sample model",
                            "unknown model '" + model +
                                "' (iid_rademacher|row_regular|q_two_step|"
                                "base|gaussian_baseline)");
  }
  write_or_print(out, text);
  return 0;
}

int cmd_tails(const std::string& config_path, const std::string& model,
              const std::vector<int>& n_list, i64 trials,
              const std::vector<double>& eta, u64 seed, bool seed_set,
              const std::string& profile, const std::string& out) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    cfg = experiment_config_from_json(read_text_file(config_path));
  }
  if (!model.empty()) cfg.model = experiment_model_from_name(model);
  if (!n_list.empty()) cfg.n_list = n_list;
  if (trials > 0) cfg.trials = trials;
  if (!eta.empty()) cfg.eta_grid = eta;
  if (seed_set) cfg.seed = seed;
  if (!profile.empty()) cfg.profile = profile;
  if (!out.empty()) cfg.out_path = out;
  cfg.check_invariants();
  const TailCurve curve = run_tail_experiment(cfg);
  write_or_print(cfg.out_path, tail_curve_csv(curve));
  return 0;
}

int cmd_singularity(int n, const std::string& model, bool exact, i64 trials,
                    u64 seed) {
  const ExperimentModel m = experiment_model_from_name(model);
  if (trials <= 0) trials = 10000;
  if (exact) {
    const Rat f = exact_singularity_frequency(n, m);
    std::printf("model=%s n=%d exact_singularity=%s (= %s)\n", model.c_str(),
                n, rat_string(f).c_str(),
                fmt_double(static_cast<double>(f)).c_str());
    return 0;
  }
  ExperimentConfig cfg;
  cfg.model = m;
  cfg.n_list = {n};
  cfg.trials = trials;
  cfg.eta_grid = {0.0};
  cfg.seed = seed;
  const TailCurve curve = run_tail_experiment(cfg);
  const TailCell& c = curve.cells.at(0);
  std::printf("model=%s n=%d trials=%lld hits=%lld p_hat=%s se=%s\n",
              model.c_str(), n, static_cast<long long>(c.trials),
              static_cast<long long>(c.hits), fmt_double(c.p_hat).c_str(),
              fmt_double(c.se).c_str());
  return 0;
}

int cmd_lcd(const std::string& file, double gamma, double alpha,
            double theta_max, double resolution, double eta,
            const std::string& profile) {
  const std::vector<double> a = read_vector_file(file);
  LcdParams params;
  params.gamma = gamma;
  params.alpha = alpha;
  params.theta_max = theta_max;
  params.grid_resolution = resolution;
  if (eta > 0) {
    const GammaReport rep =
        classify_gamma(a, eta, params, ExponentProfile::by_name(profile));
    const char* cls = rep.cls == GammaClass::Gamma1   ? "Gamma1"
                      : rep.cls == GammaClass::Gamma2 ? "Gamma2"
                                                      : "Undetermined";
    std::printf("class=%s threshold=%s\n", cls,
                fmt_double(rep.threshold).c_str());
    if (rep.lcd.status == LcdStatus::Found) {
      std::printf("theta=%s dist=%s margin=%s\n",
                  fmt_double(rep.lcd.theta).c_str(),
                  fmt_double(rep.lcd.dist).c_str(),
                  fmt_double(rep.lcd.margin).c_str());
    }
    return 0;
  }
  const LcdResult r = lcd_estimate(a, params);
  if (r.status == LcdStatus::ExceedsThetaMax) {
    std::printf("status=exceeds_theta_max theta_max=%s\n",
                fmt_double(params.theta_max).c_str());
    return 0;
  }
  std::string witness;
  for (size_t i = 0; i < r.witness.size(); ++i) {
    if (i) witness += ",";
    witness += std::to_string(r.witness[i]);
  }
  std::printf("status=found theta=%s dist=%s margin=%s witness=[%s]\n",
              fmt_double(r.theta).c_str(), fmt_double(r.dist).c_str(),
              fmt_double(r.margin).c_str(), witness.c_str());
  return 0;
}

int cmd_halasz(const std::string& file, i64 p, int k, double m, double c) {
  const std::vector<i64> a = to_integer_vector(read_vector_file(file));
  const HalaszEvaluation eval = halasz_bound(a, HalaszParams{p, k, m, c});
  std::printf("n=%zu support=%lld r_star=%s engine=%s bound=%s\n", a.size(),
              static_cast<long long>(eval.support),
              eval.r_star.str().c_str(), eval.engine.c_str(),
              fmt_double(eval.bound).c_str());
  return 0;
}

int cmd_verify(std::vector<std::string> suites, u64 seed, bool json) {
  if (suites.empty()) suites = registered_suites();
  bool all_pass = true;
  for (const std::string& name : suites) {
    const SuiteReport rep = run_invariant_suite(name, seed);
    if (json) {
      std::fputs(rep.to_json().c_str(), stdout);
    } else {
      std::printf("suite %-16s %s\n", rep.suite.c_str(),
                  rep.pass ? "pass" : "FAIL");
      for (const CheckLine& c : rep.checks) {
        if (c.pass && json) continue;
        std::printf("  [%s] %s%s%s\n", c.pass ? "ok" : "FAIL",
                    c.label.c_str(), c.detail.empty() ? "" : ": ",
                    c.detail.c_str());
      }
    }
    all_pass = all_pass && rep.pass;
  }
  return all_pass ? 0 : 2;
}

int cmd_plot(const std::string& csv, const std::string& out) {
  const std::string svg = emit_plot_svg(read_text_file(csv));
  write_or_print(out, svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"least-singular-value and anti-concentration laboratory"};
  app.require_subcommand(1);

  std::string model, out, config_path, profile = "desk", file, csv;
  std::vector<int> n_list;
  std::vector<double> eta;
  std::vector<std::string> suites;
  int n = 8, k = 1;
  i64 trials = 0, p = 3;
  u64 seed = 1;
  double gamma = 0.1, alpha = 1.0, theta_max = 100.0, resolution = 0.0;
  double big_m = 1.0, c_const = 1.0, eta_one = 0.0;
  bool exact = false, json = false;

  auto* sample = app.add_subcommand("sample", "sample one matrix or base");
  sample->add_option("--model", model, "model name")->required();
  sample->add_option("--n", n, "dimension")->required();
  sample->add_option("--seed", seed, "rng seed");
  sample->add_option("--out", out, "output path (default stdout)");

  auto* tails = app.add_subcommand("tails", "run a tail-curve experiment");
  tails->add_option("--config", config_path, "JSON config path");
  tails->add_option("--model", model, "model override");
  tails->add_option("--n", n_list, "n list override");
  tails->add_option("--trials", trials, "trials per n");
  tails->add_option("--eta", eta, "eta grid override");
  auto* seed_opt = tails->add_option("--seed", seed, "rng seed");
  tails->add_option("--profile", profile, "exponent profile paper|desk");
  tails->add_option("--out", out, "CSV output path");

  auto* sing = app.add_subcommand("singularity", "singularity frequency");
  sing->add_option("--n", n, "dimension")->required();
  sing->add_option("--model", model, "model name")->required();
  sing->add_flag("--exact", exact, "exhaustive enumeration (small n)");
  sing->add_option("--trials", trials, "Monte Carlo trials (default 10000)");
  sing->add_option("--seed", seed, "rng seed");

  auto* lcd = app.add_subcommand("lcd", "least common denominator scan");
  lcd->add_option("--file", file, "vector file, one coordinate per line")
      ->required();
  lcd->add_option("--gamma", gamma, "lattice closeness factor");
  lcd->add_option("--alpha", alpha, "absolute closeness cap");
  lcd->add_option("--theta-max", theta_max, "scan ceiling");
  lcd->add_option("--resolution", resolution, "grid step (0 = automatic)");
  lcd->add_option("--eta", eta_one, "classify against threshold n^exp / eta");
  lcd->add_option("--profile", profile, "exponent profile paper|desk");

  auto* hal = app.add_subcommand("halasz", "mod-p anti-concentration bound");
  hal->add_option("--file", file, "integer vector file")->required();
  hal->add_option("--p", p, "odd prime modulus")->required();
  hal->add_option("--k", k, "tuple half-length");
  hal->add_option("--M", big_m, "exponential parameter");
  hal->add_option("--C", c_const, "leading constant");

  auto* verify = app.add_subcommand("verify", "run invariant suites");
  verify->add_option("--suite", suites, "suite names (default: all)");
  verify->add_option("--seed", seed, "rng seed");
  verify->add_flag("--json", json, "machine-readable reports");

  auto* plot = app.add_subcommand("plot", "render a tail-curve CSV to SVG");
  plot->add_option("--csv", csv, "input CSV path")->required();
  plot->add_option("--out", out, "output SVG path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sample->parsed()) return cmd_sample(model, n, seed, out);
    if (tails->parsed()) {
      return cmd_tails(config_path, model, n_list, trials, eta, seed,
                       seed_opt->count() > 0, profile, out);
    }
    if (sing->parsed()) return cmd_singularity(n, model, exact, trials, seed);
    if (lcd->parsed()) {
      return cmd_lcd(file, gamma, alpha, theta_max, resolution, eta_one,
                     profile);
    }
    if (hal->parsed()) return cmd_halasz(file, p, k, big_m, c_const);
    if (verify->parsed()) return cmd_verify(suites, seed, json);
    if (plot->parsed()) return cmd_plot(csv, out);
  } catch (const PreconditionError& e) {
    std::fprintf(stderr, "precondition violated (%s): %s\n", e.constraint(),
                 e.what());
    return 3;
  } catch (const BudgetError& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
