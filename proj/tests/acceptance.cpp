#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "lsv/anticonc.hpp"
#include "lsv/calibration.hpp"
#include "lsv/errors.hpp"
#include "lsv/harness.hpp"
#include "lsv/models.hpp"
#include "lsv/rng.hpp"
#include "lsv/slice_stats.hpp"
#include "lsv/spectral.hpp"
#include "lsv/structure.hpp"

using namespace lsv;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr u64 kSeedEdelman = 101;
constexpr u64 kSeedOracle = 303;
constexpr u64 kSeedGrid = 404;
constexpr u64 kSeedMoments = 505;
constexpr u64 kSeedChi = 606;
constexpr u64 kSeedTwoStep = 707;
constexpr u64 kSeedHalasz = 909;
constexpr u64 kSeedTails = 1010;

std::string fd(double x) { return fmt_double(x); }

std::vector<i64> random_vector(CounterRng& rng, int n, i64 lo, i64 hi) {
  std::vector<i64> v(static_cast<size_t>(n));
  for (auto& x : v) {
    x = lo + static_cast<i64>(rng.bounded(static_cast<u64>(hi - lo + 1)));
  }
  return v;
}

bool table_matches_histogram(const DistTable& table,
                             const std::map<i64, i64>& hist, const Int& total) {
  if (hist.size() != table.size()) return false;
  size_t i = 0;
  for (const auto& [value, count] : hist) {
    if (table.values[i] != value) return false;
    if (table.p_exact[i] != Rat(count, total)) return false;
    ++i;
  }
  return true;
}

// upper 0.999 quantile of chi-square via Wilson-Hilferty
double chi2_quantile_999(double df) {
  const double z = 3.090232306167813;
  const double a = 2.0 / (9.0 * df);
  const double c = 1.0 - a + z * std::sqrt(a);
  return df * c * c * c;
}

// ---------- criterion 1 ----------

Outcome criterion_gaussian_baseline() {
  const std::vector<double> eps{0.05, 0.1, 0.2, 0.3, 0.5};
  const int n = 50;
  ExperimentConfig cfg;
  cfg.model = ExperimentModel::GaussianBaseline;
  cfg.n_list = {n};
  cfg.trials = 20000;
  cfg.eta_grid.clear();
  for (double e : eps) cfg.eta_grid.push_back(e / std::sqrt(double(n)));
  cfg.seed = kSeedEdelman;
  const TailCurve curve = run_tail_experiment(cfg);

  Outcome out;
  out.pass = true;
  for (size_t i = 0; i < eps.size(); ++i) {
    const TailCell& c = curve.cells.at(i);
    const double target = eps[i];
    const double limit = 1.0 - std::exp(-target * target / 2.0 - target);
    const double gap = std::abs(c.p_hat - target);
    const double tol = std::max(3.0 * c.se, 0.015);
    const bool ok = gap <= tol;
    out.pass = out.pass && ok;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += "eps=" + fd(target) + " p_hat=" + fd(c.p_hat) + " gap=" +
                  fd(gap) + (ok ? " <= " : " > ") + fd(tol) + " (limit law " +
                  fd(limit) + ")";
  }
  return out;
}

// ---------- criterion 2 ----------

Outcome criterion_exact_singularity() {
  const Rat iid = exact_singularity_frequency(2, ExperimentModel::IidRademacher);
  const Rat rreg = exact_singularity_frequency(2, ExperimentModel::RowRegular);
  Outcome out;
  out.pass = iid == Rat(1, 2) && rreg == Rat(1, 2);
  out.detail = "iid n=2: " + rat_string(iid) + ", row-regular n=2: " +
               rat_string(rreg) + " (exact rational, zero tolerance)";
  return out;
}

// ---------- criterion 3 ----------

Outcome criterion_anticonc_oracles() {
  CounterRng rng(kSeedOracle, 0);
  i64 signed_checked = 0, modp_checked = 0, slice_checked = 0;
  const i64 primes[] = {3, 5, 7};

  for (int n = 1; n <= 14; ++n) {
    for (int rep = 0; rep < 30; ++rep) {
      const auto w = random_vector(rng, n, -9, 9);
      const DistTable table = signed_sum_distribution(w, ProbMode::Exact);
      std::map<i64, i64> hist;
      for (u64 mask = 0; mask < (u64{1} << n); ++mask) {
        i64 s = 0;
        for (int i = 0; i < n; ++i) {
          s += ((mask >> i) & 1) ? w[size_t(i)] : -w[size_t(i)];
        }
        hist[s]++;
      }
      if (!table_matches_histogram(table, hist, Int(1) << n)) {
        return {false, "signed-sum mismatch at n=" + std::to_string(n)};
      }
      ++signed_checked;
    }
    for (int rep = 0; rep < 30; ++rep) {
      const i64 p = primes[rng.bounded(3)];
      const auto a = random_vector(rng, n, -9, 9);
      const ModAtom ma = atom_probability_mod_p(a, p);
      std::vector<i64> counts(size_t(p), 0);
      for (u64 mask = 0; mask < (u64{1} << n); ++mask) {
        i64 s = 0;
        for (int i = 0; i < n; ++i) {
          s += ((mask >> i) & 1) ? a[size_t(i)] : -a[size_t(i)];
        }
        counts[size_t(((s % p) + p) % p)]++;
      }
      Rat best = 0;
      for (i64 r = 0; r < p; ++r) {
        const Rat q(counts[size_t(r)], Int(1) << n);
        if (ma.dist[size_t(r)] != q) {
          return {false, "mod-p mismatch at n=" + std::to_string(n) +
                             " p=" + std::to_string(p)};
        }
        best = std::max(best, q);
      }
      if (ma.prob != best) {
        return {false, "mod-p atom is not the max residue mass"};
      }
      ++modp_checked;
    }
    if (n % 2 == 0) {
      for (int rep = 0; rep < 30; ++rep) {
        const auto v = random_vector(rng, n, -9, 9);
        const DistTable table = slice_sum_distribution(v, ProbMode::Exact);
        std::vector<double> vd(v.begin(), v.end());
        const i64 shift = std::accumulate(v.begin(), v.end(), i64{0});
        std::map<i64, i64> hist;
        for (double x : enumerate_slice_sums(vd)) {
          hist[i64(std::llround(x)) + shift]++;
        }
        if (!table_matches_histogram(table, hist,
                                     binomial(unsigned(n), unsigned(n / 2)))) {
          return {false, "slice mismatch at n=" + std::to_string(n)};
        }
        ++slice_checked;
      }
    }
  }
  Outcome out;
  out.pass = true;
  out.detail = std::to_string(signed_checked) + " signed + " +
               std::to_string(modp_checked) + " mod-p + " +
               std::to_string(slice_checked) +
               " slice vectors, all exactly equal to enumeration";
  return out;
}

// ---------- criterion 4 ----------

Outcome criterion_rkstar_grid() {
  CounterRng rng(kSeedGrid, 0);
  i64 checked = 0;
  for (i64 p : {3, 5, 7, 11, 13}) {
    for (int len = 1; len <= 8; ++len) {
      for (int k = 1; k <= 2; ++k) {
        std::vector<std::vector<i64>> vecs;
        for (int rep = 0; rep < 5; ++rep) {
          vecs.push_back(random_vector(rng, len, 0, p - 1));
        }
        vecs.push_back(std::vector<i64>(size_t(len), 1));
        vecs.push_back(std::vector<i64>(size_t(len), 0));
        for (const auto& a : vecs) {
          const Int brute = r_k_star_bruteforce(a, k, p);
          const Int dp = r_k_star_partition_dp(a, k, p);
          const Int disp = r_k_star(a, k, p).count;
          if (brute != dp || brute != disp) {
            return {false, "engine mismatch len=" + std::to_string(len) +
                               " k=" + std::to_string(k) +
                               " p=" + std::to_string(p) + ": brute=" +
                               brute.str() + " dp=" + dp.str() +
                               " dispatch=" + disp.str()};
          }
          if (brute > r_k_star_trivial_bound(len, k)) {
            return {false, "trivial bound violated at len=" +
                               std::to_string(len)};
          }
          ++checked;
        }
      }
    }
  }
  return {true, std::to_string(checked) +
                    " (vector, k, p) cells agree across brute force, "
                    "partition DP, and dispatcher"};
}

// ---------- criterion 5 ----------

Outcome criterion_moment_identities() {
  CounterRng rng(kSeedMoments, 0);
  i64 checked = 0;
  for (int n = 2; n <= 12; n += 2) {
    for (int rep = 0; rep < 40; ++rep) {
      const auto v = random_vector(rng, n, -9, 9);
      const std::vector<Rat> vr(v.begin(), v.end());

      const DistTable slice = slice_sum_distribution(v, ProbMode::Exact);
      Rat ex2_table = 0;
      for (size_t i = 0; i < slice.size(); ++i) {
        ex2_table += slice.p_exact[i] * Rat(Int(slice.values[i]) *
                                            slice.values[i]);
      }
      if (slice_second_moment_rat(vr) != ex2_table) {
        return {false, "slice second moment mismatch at n=" +
                           std::to_string(n)};
      }

      Rat sum = 0;
      for (i64 x : v) sum += x;
      const DistTable signed_t = signed_sum_distribution(v, ProbMode::Exact);
      Rat ey2_table = 0;
      for (size_t i = 0; i < signed_t.size(); ++i) {
        const Rat y = sum + signed_t.values[i];
        ey2_table += signed_t.p_exact[i] * y * y;
      }
      if (iid_second_moment_rat(vr) != ey2_table) {
        return {false, "iid second moment mismatch at n=" + std::to_string(n)};
      }

      if (q_row_norm_expectation_rat(vr) != Rat(n) * ex2_table / 4) {
        return {false, "row norm identity mismatch at n=" + std::to_string(n)};
      }
      ++checked;
    }
  }

  // Monte Carlo confirmation of E||Qv||^2 at n = 8
  const int n = 8;
  const auto v = random_vector(rng, n, -9, 9);
  std::vector<double> vd(v.begin(), v.end());
  const double formula = q_row_norm_expectation(vd);
  const i64 trials = 20000;
  CounterRng root(kSeedMoments, 1);
  double sum = 0, sumsq = 0;
  for (i64 t = 0; t < trials; ++t) {
    const IntMatrix q = sample_q_via_base(n, root.substream(u64(t)).next_u64());
    double norm2 = 0;
    for (int i = 0; i < n; ++i) {
      double row = 0;
      for (int j = 0; j < n; ++j) {
        row += double(q.at(i, j)) * vd[size_t(j)];
      }
      norm2 += row * row;
    }
    sum += norm2;
    sumsq += norm2 * norm2;
  }
  const double mean = sum / double(trials);
  const double sd = std::sqrt(std::max(0.0, sumsq / double(trials) - mean * mean));
  const double se = sd / std::sqrt(double(trials));
  if (std::abs(mean - formula) > 3 * se) {
    return {false, "MC row norm " + fd(mean) + " vs formula " + fd(formula) +
                       " off by more than 3 SE (" + fd(se) + ")"};
  }
  return {true, std::to_string(checked) +
                    " exact rational identities; n=8 MC mean " + fd(mean) +
                    " within 3 SE of " + fd(formula)};
}

// ---------- criterion 6 ----------

bool pushforward_exact(int n, std::string& err) {
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::map<u64, i64> hist;
  i64 total = 0;
  do {
    Base base;
    base.n = n;
    base.sigma.assign(size_t(n), perm);
    for (u64 bits = 0; bits < (u64{1} << (n / 2)); ++bits) {
      BitChoices xi;
      xi.n = n;
      xi.xi.assign(size_t(n), std::vector<std::uint8_t>(size_t(n / 2), 0));
      for (int k = 0; k < n / 2; ++k) {
        xi.xi[0][size_t(k)] = std::uint8_t((bits >> k) & 1);
      }
      const IntMatrix q = assemble_from_base(base, xi);
      u64 pattern = 0;
      for (int j = 0; j < n; ++j) {
        if (q.at(0, j) == 1) pattern |= u64{1} << j;
      }
      hist[pattern]++;
      ++total;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  const Int want_patterns = binomial(unsigned(n), unsigned(n / 2));
  if (Int(i64(hist.size())) != want_patterns) {
    err = "n=" + std::to_string(n) + ": " + std::to_string(hist.size()) +
          " patterns";
    return false;
  }
  const i64 each = total / i64(hist.size());
  for (const auto& [pat, count] : hist) {
    if (count != each) {
      err = "n=" + std::to_string(n) + ": pattern count " +
            std::to_string(count) + " != " + std::to_string(each);
      return false;
    }
  }
  return true;
}

Outcome criterion_two_step_pushforward() {
  std::string err;
  if (!pushforward_exact(4, err)) return {false, err};
  if (!pushforward_exact(6, err)) return {false, err};

  // two-sample chi-square over all 6^4 row-regular matrices at n = 4
  const int n = 4;
  const i64 trials = 1000000;
  std::map<u64, int> pattern_index;
  {
    int idx = 0;
    for (u64 m = 0; m < 16; ++m) {
      if (__builtin_popcountll(m) == 2) pattern_index[m] = idx++;
    }
  }
  const auto matrix_cell = [&](const IntMatrix& q) {
    int cell = 0;
    for (int i = 0; i < n; ++i) {
      u64 mask = 0;
      for (int j = 0; j < n; ++j) {
        if (q.at(i, j) == 1) mask |= u64{1} << j;
      }
      cell = cell * 6 + pattern_index.at(mask);
    }
    return cell;
  };
  std::vector<i64> direct(1296, 0), two_step(1296, 0);
  CounterRng root(kSeedChi, 0);
  for (i64 t = 0; t < trials; ++t) {
    direct[size_t(matrix_cell(
        sample_row_regular(n, root.substream(u64(2 * t)).next_u64())))]++;
    two_step[size_t(matrix_cell(
        sample_q_via_base(n, root.substream(u64(2 * t + 1)).next_u64())))]++;
  }
  double stat = 0;
  int nonempty = 0;
  for (size_t c = 0; c < 1296; ++c) {
    const double a = double(direct[c]), b = double(two_step[c]);
    if (a + b == 0) continue;
    ++nonempty;
    stat += (a - b) * (a - b) / (a + b);
  }
  const double threshold = chi2_quantile_999(double(nonempty - 1));
  if (stat > threshold) {
    return {false, "chi-square " + fd(stat) + " over " +
                       std::to_string(nonempty) + " cells exceeds the 1e-3 "
                       "threshold " + fd(threshold)};
  }
  return {true, "row pushforward exactly uniform at n=4 (16 of 96) and n=6 "
                "(288 of 5760); chi-square " + fd(stat) + " <= " +
                fd(threshold) + " over " + std::to_string(nonempty) +
                " matrix cells, 1e6 samples per sampler"};
}

// ---------- criterion 7 ----------

Outcome criterion_two_step_row_atom() {
  CounterRng rng(kSeedTwoStep, 0);
  i64 checked = 0;
  for (int n : {2, 4, 6, 8}) {
    for (int b = 0; b < 25; ++b) {
      const Base base = sample_base(n, rng.next_u64());
      for (int rep = 0; rep < 8; ++rep) {
        const auto v = random_vector(rng, n, -9, 9);
        for (int row = 0; row < n; ++row) {
          const RowAtomComparison cmp = two_step_row_atom(v, base, row);
          if (cmp.lhs > cmp.rhs) {
            return {false, "lhs > rhs at n=" + std::to_string(n) + " row=" +
                               std::to_string(row) + ": " +
                               rat_string(cmp.lhs) + " vs " +
                               rat_string(cmp.rhs)};
          }
          ++checked;
        }
      }
    }
  }
  for (int rep = 0; rep < 10000; ++rep) {
    const Base base = sample_base(12, rng.next_u64());
    const auto v = random_vector(rng, 12, -9, 9);
    const int row = int(rng.bounded(12));
    const RowAtomComparison cmp = two_step_row_atom(v, base, row);
    if (cmp.lhs > cmp.rhs) {
      return {false, "lhs > rhs at n=12 row=" + std::to_string(row)};
    }
    ++checked;
  }
  return {true, std::to_string(checked) +
                    " exact comparisons, lhs <= rhs in every one"};
}

// ---------- criterion 8 ----------

Outcome criterion_lcd_analytic() {
  Outcome out;
  out.pass = true;
  const double res = 1e-4;
  for (double gamma : {0.01, 0.1, 0.5}) {
    LcdParams params;
    params.gamma = gamma;
    params.alpha = 1.0;
    params.theta_max = 5.0;
    params.grid_resolution = res;

    const LcdResult r1 = lcd_estimate({1, 0, 0, 0}, params);
    const double t1 = 1.0 / (1.0 + gamma);
    const bool ok1 =
        r1.status == LcdStatus::Found && std::abs(r1.theta - t1) <= res + 1e-9;

    const double inv = 1.0 / std::sqrt(2.0);
    const LcdResult r2 = lcd_estimate({inv, inv}, params);
    const double t2 = std::sqrt(2.0) / (1.0 + gamma);
    const bool ok2 =
        r2.status == LcdStatus::Found && std::abs(r2.theta - t2) <= res + 1e-9;

    out.pass = out.pass && ok1 && ok2;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += "gamma=" + fd(gamma) + ": e1 " + fd(r1.theta) + " vs " +
                  fd(t1) + (ok1 ? " ok" : " MISS") + ", diagonal " +
                  fd(r2.theta) + " vs " + fd(t2) + (ok2 ? " ok" : " MISS");
  }
  return out;
}

// ---------- criterion 9 ----------

struct HalaszCalibration {
  double c_measured = 0;
  i64 corpus = 0;
  i64 skipped_r0 = 0;  // vectors where R* = 0 never bind the max
  bool inequality_ok = true;
};

HalaszCalibration halasz_corpus_measurement() {
  const int n = 160, k = 1;
  const double M = 2.0;
  const i64 p = least_prime_at_least(2500);
  CounterRng rng(kSeedHalasz, 0);

  HalaszCalibration cal;
  cal.c_measured = -1e300;
  const double noise = std::pow(
      40.0 * std::pow(double(k), 0.99) * std::pow(double(n), 1.01), double(k));
  const double denom =
      std::pow(2.0, 2 * k) * std::pow(double(n), 2 * k) * std::sqrt(M);

  for (int i = 0; i < 500; ++i) {
    std::vector<i64> a(static_cast<size_t>(n));
    switch (i % 5) {
      case 0:
        for (auto& x : a) x = 1 + i64(rng.bounded(u64(p - 1)));
        break;
      case 1:
        for (auto& x : a) x = rng.bounded(2) ? 1 : p - 1;
        break;
      case 2:
        std::fill(a.begin(), a.end(), 1 + i64(i % 7));
        break;
      case 3:
        for (size_t j = 0; j < a.size(); ++j) a[j] = j < a.size() / 2 ? 1 : 2;
        break;
      default:
        for (auto& x : a) x = 1 + i64(rng.bounded(9));
        break;
    }
    const double rho = double(atom_probability_mod_p(a, p).prob);
    const double r_star = double(r_k_star(a, k, p).count);
    const double solved =
        ((rho - 1.0 / double(p) - std::exp(-M)) * denom) / (r_star + noise);
    cal.c_measured = std::max(cal.c_measured, solved);
    if (r_star == 0) ++cal.skipped_r0;
    ++cal.corpus;
  }

  // re-check through the real evaluator with the measured constant
  rng = CounterRng(kSeedHalasz, 0);
  for (int i = 0; i < 500; ++i) {
    std::vector<i64> a(static_cast<size_t>(n));
    switch (i % 5) {
      case 0:
        for (auto& x : a) x = 1 + i64(rng.bounded(u64(p - 1)));
        break;
      case 1:
        for (auto& x : a) x = rng.bounded(2) ? 1 : p - 1;
        break;
      case 2:
        std::fill(a.begin(), a.end(), 1 + i64(i % 7));
        break;
      case 3:
        for (size_t j = 0; j < a.size(); ++j) a[j] = j < a.size() / 2 ? 1 : 2;
        break;
      default:
        for (auto& x : a) x = 1 + i64(rng.bounded(9));
        break;
    }
    const double rho = double(atom_probability_mod_p(a, p).prob);
    const double r_star = double(r_k_star(a, k, p).count);
    const double rhs =
        halasz_rhs(n, k, M, p, r_star, cal.c_measured);
    if (rho > rhs + 1e-12) cal.inequality_ok = false;
  }
  return cal;
}

Outcome criterion_halasz_calibration() {
  const HalaszCalibration cal = halasz_corpus_measurement();
  const double frozen = calib::kHalaszCorpusC;
  const double tol = calib::kCalibrationSlack * std::max(std::abs(frozen), 1e-9);
  const bool reproduced = std::abs(cal.c_measured - frozen) <= tol;
  Outcome out;
  out.pass = cal.inequality_ok && reproduced;
  out.detail = "corpus C = " + fd(cal.c_measured) + " (frozen " + fd(frozen) +
               ", tolerance " + fd(tol) + "), inequality " +
               (cal.inequality_ok ? "holds" : "FAILS") + " over " +
               std::to_string(cal.corpus) + " vectors";
  return out;
}

// ---------- criterion 10 ----------

struct TailCalibration {
  double c_iid = 0;
  double c_rreg = 0;
};

double tail_constant(ExperimentModel model, double exponent) {
  ExperimentConfig cfg;
  cfg.model = model;
  cfg.n_list = {20, 40};
  cfg.trials = 10000;
  cfg.eta_grid = {0.0005, 0.001, 0.002, 0.005, 0.01, 0.02};
  cfg.seed = kSeedTails;
  const TailCurve curve = run_tail_experiment(cfg);
  double c = 0;
  for (const TailCell& cell : curve.cells) {
    const double ref = cell.eta * std::pow(double(cell.n), exponent);
    const double numer = cell.p_hat - 3.0 * cell.se;
    if (numer > 0) c = std::max(c, numer / ref);
  }
  return c;
}

TailCalibration tail_measurement() {
  TailCalibration cal;
  cal.c_iid = tail_constant(ExperimentModel::IidRademacher, 1.5);
  cal.c_rreg = tail_constant(ExperimentModel::RowRegular, 2.0);
  return cal;
}

Outcome criterion_tail_shape() {
  const TailCalibration cal = tail_measurement();
  const double slack = calib::kCalibrationSlack;
  const bool iid_ok =
      std::abs(cal.c_iid - calib::kTailConstIid) <=
      slack * std::max(std::abs(calib::kTailConstIid), 1e-9);
  const bool rreg_ok =
      std::abs(cal.c_rreg - calib::kTailConstRowRegular) <=
      slack * std::max(std::abs(calib::kTailConstRowRegular), 1e-9);
  Outcome out;
  out.pass = iid_ok && rreg_ok;
  out.detail = "iid C = " + fd(cal.c_iid) + " (frozen " +
               fd(calib::kTailConstIid) + (iid_ok ? ", ok" : ", DRIFT") +
               "); row-regular C = " + fd(cal.c_rreg) + " (frozen " +
               fd(calib::kTailConstRowRegular) + (rreg_ok ? ", ok" : ", DRIFT") +
               "); p_hat <= C eta n^a + 3 SE holds across both grids by "
               "construction of the measured C";
  return out;
}

// ---------- criterion 11 ----------

Outcome criterion_determinism() {
  ExperimentConfig cfg;
  cfg.model = ExperimentModel::IidRademacher;
  cfg.n_list = {8};
  cfg.trials = 500;
  cfg.eta_grid = {0.0, 0.01, 0.1, 0.5};
  cfg.seed = 77;
  const std::string a = tail_curve_csv(run_tail_experiment(cfg));
  const std::string b = tail_curve_csv(run_tail_experiment(cfg));
  const std::string c =
      tail_curve_csv(run_tail_experiment(cfg, ExecPolicy::Serial));
  if (a != b) return {false, "rerun with identical config+seed drifted"};
  if (a != c) return {false, "serial and OpenMP runs disagree"};

  const std::string cfg_json = experiment_config_to_json(cfg);
  const ExperimentConfig cfg2 = experiment_config_from_json(cfg_json);
  const std::string d = tail_curve_csv(run_tail_experiment(cfg2));
  if (a != d) return {false, "config JSON round trip changed the run"};

  if (emit_plot_svg(a) != emit_plot_svg(a)) {
    return {false, "plot is not a pure function of the CSV"};
  }
  if (matrix_to_text(sample_rademacher(9, 5)) !=
      matrix_to_text(sample_rademacher(9, 5))) {
    return {false, "sampler output drifted across calls"};
  }
  if (run_invariant_suite("rkstar", 3).to_json() !=
      run_invariant_suite("rkstar", 3).to_json()) {
    return {false, "suite report drifted across reruns"};
  }
  return {true, "CSV, plot, sampler text, and suite reports byte-identical "
                "across reruns and across serial/OpenMP"};
}

struct Criterion {
  int id;
  const char* label;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "gaussian baseline matches the limit law grid", criterion_gaussian_baseline},
      {2, "exact singularity frequencies at n=2 are 1/2", criterion_exact_singularity},
      {3, "anti-concentration DPs equal enumeration, n<=14", criterion_anticonc_oracles},
      {4, "R_k* engines agree on the full (len,k,p) grid", criterion_rkstar_grid},
      {5, "closed-form moments equal exact enumeration", criterion_moment_identities},
      {6, "two-step pushforward uniform; chi-square at n=4", criterion_two_step_pushforward},
      {7, "row atom comparison lhs <= rhs on all corpora", criterion_two_step_row_atom},
      {8, "LCD analytic family within grid resolution", criterion_lcd_analytic},
      {9, "mod-p corpus constant frozen and reproduced", criterion_halasz_calibration},
      {10, "tail-shape constants frozen and reproduced", criterion_tail_shape},
      {11, "byte-identical reruns everywhere", criterion_determinism},
  };
  return all;
}

int run_calibrate() {
  const calib::CalibrationMeasurement m = calib::measure_slice_constants();
  const HalaszCalibration h = halasz_corpus_measurement();
  const TailCalibration t = tail_measurement();
  std::printf("// measured constants, paste into include/lsv/calibration.hpp\n");
  std::printf("inline constexpr double kOq2 = %s;\n", fd(m.oq2).c_str());
  std::printf("inline constexpr double kOq3 = %s;\n", fd(m.oq3).c_str());
  std::printf("inline constexpr double kOq4 = %s;\n", fd(m.oq4).c_str());
  std::printf("inline constexpr double kOq5 = %s;\n", fd(m.oq5).c_str());
  std::printf("inline constexpr double kOt3 = %s;\n", fd(m.ot3).c_str());
  std::printf("inline constexpr double kOt4 = %s;\n", fd(m.ot4).c_str());
  std::printf("inline constexpr double kOt5 = %s;\n", fd(m.ot5).c_str());
  std::printf("inline constexpr double kHalaszCorpusC = %s;\n",
              fd(h.c_measured).c_str());
  std::printf("inline constexpr double kTailConstIid = %s;\n",
              fd(t.c_iid).c_str());
  std::printf("inline constexpr double kTailConstRowRegular = %s;\n",
              fd(t.c_rreg).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  bool calibrate = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--calibrate") == 0) {
      calibrate = true;
    } else {
      std::fprintf(stderr, "usage: acceptance [--only K] [--calibrate]\n");
      return 64;
    }
  }
  if (calibrate) return run_calibrate();

  bool all_pass = true;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s\n", out.pass ? "PASS" : "FAIL", c.id,
                c.label);
    if (!out.detail.empty()) std::printf("        %s\n", out.detail.c_str());
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}
