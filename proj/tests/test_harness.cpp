#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "lsv/errors.hpp"
#include "lsv/harness.hpp"

using namespace lsv;

TEST_CASE("model names round trip") {
  for (auto m : {ExperimentModel::IidRademacher, ExperimentModel::RowRegular,
                 ExperimentModel::GaussianBaseline}) {
    CHECK(experiment_model_from_name(experiment_model_name(m)) == m);
  }
  CHECK_THROWS_AS(experiment_model_from_name("heisenberg"),
                  PreconditionError);
}

TEST_CASE("config json round trip keeps every field") {
  ExperimentConfig cfg;
  cfg.model = ExperimentModel::RowRegular;
  cfg.n_list = {4, 8};
  cfg.trials = 123;
  cfg.eta_grid = {0.01, 0.1};
  cfg.seed = 99;
  cfg.tol = 1e-9;
  cfg.profile = "paper";
  cfg.out_path = "x.csv";
  const ExperimentConfig back =
      experiment_config_from_json(experiment_config_to_json(cfg));
  CHECK(back.model == cfg.model);
  CHECK(back.n_list == cfg.n_list);
  CHECK(back.trials == cfg.trials);
  CHECK(back.eta_grid == cfg.eta_grid);
  CHECK(back.seed == cfg.seed);
  CHECK(back.tol == cfg.tol);
  CHECK(back.profile == cfg.profile);
  CHECK(back.out_path == cfg.out_path);
}

TEST_CASE("config invariants reject bad grids") {
  ExperimentConfig cfg;
  cfg.eta_grid = {0.1, 0.01};  // unsorted
  CHECK_THROWS_AS(cfg.check_invariants(), PreconditionError);
  cfg.eta_grid = {0.01};
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.check_invariants(), PreconditionError);
  cfg.trials = 10;
  cfg.model = ExperimentModel::RowRegular;
  cfg.n_list = {5};  // odd
  CHECK_THROWS_AS(cfg.check_invariants(), PreconditionError);
}

TEST_CASE("csv schema and determinism on a tiny run") {
  ExperimentConfig cfg;
  cfg.model = ExperimentModel::GaussianBaseline;
  cfg.n_list = {4};
  cfg.trials = 50;
  cfg.eta_grid = {0.05, 0.5};
  cfg.seed = 5;
  const std::string csv = tail_curve_csv(run_tail_experiment(cfg));
  CHECK(csv.find("model,n,eta,trials,hits,p_hat,se,reference\n") == 0);
  CHECK(csv == tail_curve_csv(run_tail_experiment(cfg)));
  const std::string serial =
      tail_curve_csv(run_tail_experiment(cfg, ExecPolicy::Serial));
  CHECK(csv == serial);
}

TEST_CASE("exact singularity pinned values") {
  CHECK(exact_singularity_frequency(1, ExperimentModel::IidRademacher) ==
        Rat(0));
  CHECK(exact_singularity_frequency(2, ExperimentModel::IidRademacher) ==
        Rat(1, 2));
  CHECK(exact_singularity_frequency(2, ExperimentModel::RowRegular) ==
        Rat(1, 2));
  CHECK_THROWS_AS(
      exact_singularity_frequency(6, ExperimentModel::IidRademacher),
      BudgetError);
  CHECK_THROWS_AS(
      exact_singularity_frequency(2, ExperimentModel::GaussianBaseline),
      PreconditionError);
}

TEST_CASE("union bound report pinned examples") {
  CHECK(union_bound_report_log(1.0, 10, 1e-3) ==
        doctest::Approx(10.0 * std::log(0.1)).epsilon(1e-12));
  CHECK(union_bound_report_log(2.0, 7, 1.0) ==
        doctest::Approx(7.0 * std::log(200.0)).epsilon(1e-12));
  CHECK_THROWS_AS(union_bound_report_log(-1.0, 7, 1.0), PreconditionError);
}

TEST_CASE("plot is pure and validates its input") {
  ExperimentConfig cfg;
  cfg.model = ExperimentModel::IidRademacher;
  cfg.n_list = {4};
  cfg.trials = 200;
  cfg.eta_grid = {0.05, 0.3, 0.9};
  cfg.seed = 2;
  const std::string csv = tail_curve_csv(run_tail_experiment(cfg));
  const std::string svg = emit_plot_svg(csv);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg == emit_plot_svg(csv));
  CHECK_THROWS_AS(emit_plot_svg("bogus,header\n1,2\n"), PreconditionError);
  CHECK_THROWS_AS(emit_plot_svg("model,n,eta,trials,hits,p_hat,se,reference\n"),
                  PreconditionError);
}

TEST_CASE("fmt_double round trips through strtod") {
  for (double x : {0.1, 1.0 / 3.0, 1e-17, -2.5e300, 3.0, 0.0, 1e308}) {
    CHECK(std::strtod(fmt_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("suite registry knows every suite and rejects strangers") {
  const auto names = registered_suites();
  CHECK(names.size() == 9);
  CHECK_THROWS_AS(run_invariant_suite("not-a-suite", 1), PreconditionError);
  const SuiteReport rep = run_invariant_suite("rkstar", 1);
  CHECK(rep.suite == "rkstar");
  CHECK(rep.pass);
  CHECK(rep.to_json().find("\"suite\"") != std::string::npos);
}
