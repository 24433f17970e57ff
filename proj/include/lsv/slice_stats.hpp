#pragma once

#include <vector>

#include "lsv/errors.hpp"
#include "lsv/exact.hpp"
#include "lsv/parallel.hpp"

namespace lsv {

// Closed-form second moments for X = sum v_i (1 + x_i) with x drawn
// from the zero-sum +-1 slice, and its unconditioned Rademacher
// analogue Y. Cores are templated so tests can re-run every identity
// in exact rationals.

template <class T>
T slice_second_moment_core(const std::vector<T>& v) {
  if (v.size() < 2) throw PreconditionError("n >= 2", "");
  const T n = static_cast<T>(static_cast<i64>(v.size()));
  T s = 0, sq = 0;
  for (const T& x : v) {
    s += x;
    sq += x * x;
  }
  return ((n - 2) * s * s + n * sq) / (n - 1);
}

template <class T>
T iid_second_moment_core(const std::vector<T>& v) {
  T s = 0, sq = 0;
  for (const T& x : v) {
    s += x;
    sq += x * x;
  }
  return s * s + sq;
}

// E[||Q v||^2] = (n/4) E[X^2]; defined for even n only.
template <class T>
T q_row_norm_expectation_core(const std::vector<T>& v) {
  if (v.size() % 2 != 0) throw PreconditionError("n even", "");
  const T n = static_cast<T>(static_cast<i64>(v.size()));
  return n * slice_second_moment_core(v) / 4;
}

double slice_second_moment(const std::vector<double>& v);
Rat slice_second_moment_rat(const std::vector<Rat>& v);
double iid_second_moment(const std::vector<double>& v);
Rat iid_second_moment_rat(const std::vector<Rat>& v);
double q_row_norm_expectation(const std::vector<double>& v);
Rat q_row_norm_expectation_rat(const std::vector<Rat>& v);

// E[X^{2q}] for integer v, exactly, from the full slice table.
Rat slice_moment_exact(const std::vector<i64>& v, int q,
                       i64 max_cells = 50'000'000);

enum class MomentMode { Exact, MonteCarlo };

struct MomentCheck {
  double value = 0;   // E[X^{2q}], exact or estimated
  double bound = 0;   // 100 sqrt(n) (4q)^q (E[X^2])^q
  double ratio = 0;
  bool within = false;  // value <= bound
  i64 trials = 0;       // MC mode only
  double se = 0;        // MC mode only
};

MomentCheck slice_moment_empirical(const std::vector<i64>& v, int q,
                                   MomentMode mode, u64 seed = 0,
                                   i64 trials = 100'000,
                                   i64 max_cells = 50'000'000,
                                   ExecPolicy policy = ExecPolicy::OpenMP);

// The dimension-dependent branch of the moment-norm bound:
// (100 sqrt(n))^{1/q} * 5q * EX2.
double moment_norm_bound(int q, i64 n, double ex2);

// Upper bound for E[exp(lambda Z)], Z = E[X^2] - X^2:
// 1 + O_t lambda^2 EX2^2 + 200 sqrt(n) 20^t lambda^t EX2^t,
// valid for 0 <= lambda < 1/(40 EX2) and integer t >= 3.
double mgf_bound(double lambda, double ex2, int t, i64 n, double o_t);

// E[exp(lambda Z)] computed from the exact slice table (the exponent
// is exact rational, the exponential is evaluated in double).
double slice_mgf_from_table(const std::vector<i64>& v, double lambda,
                            i64 max_cells = 50'000'000);

enum class FixedVectorModel { QRowRegular, MRademacher };

struct InvertibilityCheck {
  i64 trials = 0;
  i64 hits = 0;       // samples with ||Mv|| <= (sqrt(n)/2) ||v||
  double p_hat = 0;
  double threshold = 0;
};

// Empirical probability of the fixed-vector small-image event; the
// caller decides what counts as small enough, this only reports.
InvertibilityCheck fixed_vector_invertibility_check(
    const std::vector<double>& v, i64 trials, u64 seed, FixedVectorModel model,
    ExecPolicy policy = ExecPolicy::OpenMP);

}  // namespace lsv
