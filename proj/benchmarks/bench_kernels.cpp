#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lsv/harness.hpp"
#include "lsv/parallel.hpp"
#include "lsv/slice_stats.hpp"
#include "lsv/structure.hpp"

using namespace lsv;

namespace {

double run_ms(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

void row(const std::string& name, const std::function<void(ExecPolicy)>& fn) {
  // warm once so allocator and thread-pool startup stay out of the timings
  fn(ExecPolicy::Serial);
  const double serial = run_ms([&] { fn(ExecPolicy::Serial); });
  const double openmp = run_ms([&] { fn(ExecPolicy::OpenMP); });
  std::printf("%-28s %10.1f %10.1f %9.2fx\n", name.c_str(), serial, openmp,
              serial / openmp);
}

}  // namespace

int main() {
  std::printf("%-28s %10s %10s %10s\n", "kernel", "serial/ms", "openmp/ms",
              "speedup");

  row("tail curve n=30 x2000", [](ExecPolicy pol) {
    ExperimentConfig cfg;
    cfg.model = ExperimentModel::IidRademacher;
    cfg.n_list = {30};
    cfg.trials = 2000;
    cfg.eta_grid = {0.001, 0.01, 0.1};
    cfg.seed = 7;
    run_tail_experiment(cfg, pol);
  });

  row("lcd scan 2e6 grid points", [](ExecPolicy pol) {
    std::vector<double> a{0.62, -0.31, 0.45, 0.12, -0.55, 0.04};
    double norm2 = 0;
    for (double x : a) norm2 += x * x;
    for (double& x : a) x /= std::sqrt(norm2);
    LcdParams params;
    params.gamma = 0.05;
    params.alpha = 1.0;
    params.theta_max = 200.0;
    params.grid_resolution = 1e-4;
    lcd_estimate(a, params, pol);
  });

  row("slice moment MC n=16 x2e5", [](ExecPolicy pol) {
    const std::vector<i64> v{3, -1, 4, 1, -5, 9, -2, 6,
                             -5, 3, 5, -8, 9, -7, 9, 3};
    slice_moment_empirical(v, 3, MomentMode::MonteCarlo, 11, 200000,
                           50'000'000, pol);
  });

  row("fixed vector n=40 x5000", [](ExecPolicy pol) {
    std::vector<double> v(40);
    double norm2 = 0;
    for (size_t i = 0; i < v.size(); ++i) {
      v[i] = std::cos(static_cast<double>(i) + 1.0);
      norm2 += v[i] * v[i];
    }
    for (double& x : v) x /= std::sqrt(norm2);
    fixed_vector_invertibility_check(v, 5000, 13, FixedVectorModel::QRowRegular,
                                     pol);
  });

  row("rkstar brute n=8 k=2 p=13", [](ExecPolicy pol) {
    const std::vector<i64> a{1, 5, 2, 9, 7, 3, 11, 4};
    r_k_star_bruteforce(a, 2, 13, 2'000'000'000, pol);
  });

  return 0;
}
