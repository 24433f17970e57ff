#include "lsv/slice_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lsv/anticonc.hpp"
#include "lsv/matrix.hpp"
#include "lsv/models.hpp"
#include "lsv/rng.hpp"

namespace lsv {

namespace {

constexpr u64 kStreamSliceMoment = 7;
constexpr u64 kStreamInvertibility = 8;

}  // namespace

double slice_second_moment(const std::vector<double>& v) {
  return slice_second_moment_core(v);
}
Rat slice_second_moment_rat(const std::vector<Rat>& v) {
  return slice_second_moment_core(v);
}
double iid_second_moment(const std::vector<double>& v) {
  return iid_second_moment_core(v);
}
Rat iid_second_moment_rat(const std::vector<Rat>& v) {
  return iid_second_moment_core(v);
}
double q_row_norm_expectation(const std::vector<double>& v) {
  return q_row_norm_expectation_core(v);
}
Rat q_row_norm_expectation_rat(const std::vector<Rat>& v) {
  return q_row_norm_expectation_core(v);
}

Rat slice_moment_exact(const std::vector<i64>& v, int q, i64 max_cells) {
  if (q < 1) throw PreconditionError("q >= 1", "");
  const DistTable table = slice_sum_distribution(v, ProbMode::Exact, max_cells);
  Rat m = 0;
  for (size_t i = 0; i < table.size(); ++i) {
    m += table.p_exact[i] * Rat(int_pow(Int(table.values[i]), 2 * q));
  }
  return m;
}

MomentCheck slice_moment_empirical(const std::vector<i64>& v, int q,
                                   MomentMode mode, u64 seed, i64 trials,
                                   i64 max_cells, ExecPolicy policy) {
  if (q < 1) throw PreconditionError("q >= 1", "");
  const i64 n = static_cast<i64>(v.size());
  if (n < 2 || n % 2 != 0) throw PreconditionError("n even >= 2", "");

  MomentCheck out;
  std::vector<double> vd(v.begin(), v.end());
  const double ex2 = slice_second_moment(vd);
  out.bound = 100.0 * std::sqrt(static_cast<double>(n)) *
              std::pow(4.0 * q, q) * std::pow(ex2, q);

  if (mode == MomentMode::Exact) {
    out.value = static_cast<double>(slice_moment_exact(v, q, max_cells));
  } else {
    if (trials < 1) throw PreconditionError("trials >= 1", "");
    const i64 half = n / 2;
    CounterRng root(seed, kStreamSliceMoment);
    std::vector<double> powers(static_cast<size_t>(trials), 0.0);
    for_each_index(trials, policy, [&](i64 t) {
      CounterRng rng = root.substream(static_cast<u64>(t));
      // partial Fisher-Yates: the first n/2 slots get the +1 signs
      std::vector<int> idx(static_cast<size_t>(n));
      std::iota(idx.begin(), idx.end(), 0);
      double x = 0;
      for (i64 j = 0; j < half; ++j) {
        const i64 pick = j + static_cast<i64>(rng.bounded(static_cast<u64>(n - j)));
        std::swap(idx[static_cast<size_t>(j)], idx[static_cast<size_t>(pick)]);
        x += 2.0 * static_cast<double>(v[static_cast<size_t>(idx[static_cast<size_t>(j)])]);
      }
      double p = 1;
      for (int e = 0; e < 2 * q; ++e) p *= x;
      powers[static_cast<size_t>(t)] = p;
    });
    double sum = 0, sumsq = 0;
    for (double p : powers) {
      sum += p;
      sumsq += p * p;
    }
    out.value = sum / static_cast<double>(trials);
    const double var =
        std::max(0.0, sumsq / static_cast<double>(trials) - out.value * out.value);
    out.trials = trials;
    out.se = std::sqrt(var / static_cast<double>(trials));
  }
  if (out.bound > 0) {
    out.ratio = out.value / out.bound;
    out.within = out.value <= out.bound;
  } else {
    out.ratio = out.value == 0 ? 0 : std::numeric_limits<double>::infinity();
    out.within = out.value == 0;
  }
  return out;
}

double moment_norm_bound(int q, i64 n, double ex2) {
  if (q < 1) throw PreconditionError("q >= 1", "");
  if (n < 1) throw PreconditionError("n >= 1", "");
  return std::pow(100.0 * std::sqrt(static_cast<double>(n)), 1.0 / q) * 5.0 *
         q * ex2;
}

namespace {

void check_mgf_lambda(double lambda, double ex2) {
  if (lambda < 0 || (ex2 > 0 && !(lambda < 1.0 / (40.0 * ex2)))) {
    throw PreconditionError("0 <= lambda < 1/(40 E[X^2])",
                            "lambda = " + std::to_string(lambda) +
                                ", E[X^2] = " + std::to_string(ex2));
  }
}

}  // namespace

double mgf_bound(double lambda, double ex2, int t, i64 n, double o_t) {
  if (t < 3) throw PreconditionError("t >= 3", "t = " + std::to_string(t));
  if (ex2 < 0) throw PreconditionError("E[X^2] >= 0", "");
  check_mgf_lambda(lambda, ex2);
  return 1.0 + o_t * lambda * lambda * ex2 * ex2 +
         200.0 * std::sqrt(static_cast<double>(n)) *
             std::pow(20.0, t) * std::pow(lambda, t) * std::pow(ex2, t);
}

double slice_mgf_from_table(const std::vector<i64>& v, double lambda,
                            i64 max_cells) {
  std::vector<Rat> vr(v.begin(), v.end());
  const Rat ex2 = slice_second_moment_rat(vr);
  check_mgf_lambda(lambda, static_cast<double>(ex2));
  const DistTable table = slice_sum_distribution(v, ProbMode::Exact, max_cells);
  double m = 0;
  for (size_t i = 0; i < table.size(); ++i) {
    const Rat z = ex2 - Rat(Int(table.values[i]) * table.values[i]);
    m += static_cast<double>(table.p_exact[i]) *
         std::exp(lambda * static_cast<double>(z));
  }
  return m;
}

InvertibilityCheck fixed_vector_invertibility_check(
    const std::vector<double>& v, i64 trials, u64 seed, FixedVectorModel model,
    ExecPolicy policy) {
  if (trials < 1) throw PreconditionError("trials >= 1", "");
  const int n = static_cast<int>(v.size());
  if (n < 2) throw PreconditionError("n >= 2", "");
  if (model == FixedVectorModel::QRowRegular && n % 2 != 0) {
    throw PreconditionError("n even for the row-regular model", "");
  }
  double vnorm2 = 0;
  for (double x : v) vnorm2 += x * x;

  InvertibilityCheck out;
  out.trials = trials;
  out.threshold = 0.5 * std::sqrt(static_cast<double>(n) * vnorm2);

  CounterRng root(seed, kStreamInvertibility);
  std::vector<std::uint8_t> hit(static_cast<size_t>(trials), 0);
  for_each_index(trials, policy, [&](i64 t) {
    const u64 trial_seed = root.substream(static_cast<u64>(t)).next_u64();
    const IntMatrix m = model == FixedVectorModel::QRowRegular
                            ? sample_row_regular(n, trial_seed)
                            : sample_rademacher(n, trial_seed);
    double norm2 = 0;
    for (int i = 0; i < n; ++i) {
      double row = 0;
      for (int j = 0; j < n; ++j) {
        row += static_cast<double>(m.at(i, j)) * v[static_cast<size_t>(j)];
      }
      norm2 += row * row;
    }
    hit[static_cast<size_t>(t)] =
        std::sqrt(norm2) <= out.threshold ? 1 : 0;
  });
  for (auto h : hit) out.hits += h;
  out.p_hat = static_cast<double>(out.hits) / static_cast<double>(trials);
  return out;
}

}  // namespace lsv
