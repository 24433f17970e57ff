#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <tuple>

#include "lsv/anticonc.hpp"
#include "lsv/calibration.hpp"
#include "lsv/errors.hpp"
#include "lsv/exponents.hpp"
#include "lsv/harness.hpp"
#include "lsv/models.hpp"
#include "lsv/rng.hpp"
#include "lsv/slice_stats.hpp"
#include "lsv/spectral.hpp"
#include "lsv/structure.hpp"

namespace lsv {

namespace {

constexpr u64 kStreamSuite = 12;

struct SuiteBuilder {
  SuiteReport rep;

  SuiteBuilder(std::string name, u64 seed) {
    rep.suite = std::move(name);
    rep.seed = seed;
    rep.pass = true;
  }

  void check(const std::string& label, bool ok, std::string detail = "") {
    rep.checks.push_back({label, ok, std::move(detail)});
    if (!ok) rep.pass = false;
  }
};

std::vector<i64> random_vector(CounterRng& rng, int n, i64 lo, i64 hi) {
  std::vector<i64> v(static_cast<size_t>(n));
  for (auto& x : v) {
    x = lo + static_cast<i64>(rng.bounded(static_cast<u64>(hi - lo + 1)));
  }
  return v;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool near_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

Rat rat_pow(const Rat& x, int e) {
  Rat acc = 1;
  for (int i = 0; i < e; ++i) acc *= x;
  return acc;
}

// Independent histogram oracle: exact table == counted enumeration.
bool table_matches_enumeration(const DistTable& table,
                               const std::vector<double>& listing) {
  std::map<i64, i64> hist;
  for (double x : listing) hist[static_cast<i64>(std::llround(x))]++;
  if (hist.size() != table.size()) return false;
  const Int total = static_cast<i64>(listing.size());
  size_t i = 0;
  for (const auto& [value, count] : hist) {
    if (table.values[i] != value) return false;
    if (table.p_exact[i] != Rat(count, total)) return false;
    ++i;
  }
  return true;
}

double levy_window_oracle(const DistTable& table, double delta) {
  double best = 0;
  for (size_t i = 0; i < table.size(); ++i) {
    const double left = static_cast<double>(table.values[i]);
    Rat mass = 0;
    for (size_t j = 0; j < table.size(); ++j) {
      const double v = static_cast<double>(table.values[j]);
      if (v >= left && v <= left + 2 * delta) mass += table.p_exact[j];
    }
    best = std::max(best, static_cast<double>(mass));
  }
  return best;
}

// ---------- anticonc-oracle ----------

SuiteReport suite_anticonc(u64 seed) {
  SuiteBuilder s("anticonc-oracle", seed);
  CounterRng rng(seed, kStreamSuite);

  bool signed_ok = true;
  for (int n = 1; n <= 10 && signed_ok; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto w = random_vector(rng, n, -9, 9);
      const auto table = signed_sum_distribution(w, ProbMode::Exact);
      std::vector<double> wd(w.begin(), w.end());
      if (!table_matches_enumeration(table, enumerate_signed_sums(wd))) {
        signed_ok = false;
        break;
      }
    }
  }
  s.check("signed-sum DP equals full enumeration, n <= 10", signed_ok);

  bool slice_ok = true;
  for (int n = 2; n <= 12 && slice_ok; n += 2) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto v = random_vector(rng, n, -9, 9);
      const auto table = slice_sum_distribution(v, ProbMode::Exact);
      std::vector<double> vd(v.begin(), v.end());
      // table holds sum v_i (1 + x_i); enumeration holds sum v_i x_i
      const double shift = std::accumulate(vd.begin(), vd.end(), 0.0);
      auto sums = enumerate_slice_sums(vd);
      for (auto& x : sums) x += shift;
      if (!table_matches_enumeration(table, sums)) {
        slice_ok = false;
        break;
      }
    }
  }
  s.check("slice-sum DP equals full enumeration, n <= 12", slice_ok);

  {
    const Atom a11 = atom_probability({1, 1});
    const Atom a123 = atom_probability({1, 2, 3});
    s.check("atom((1,1)) = 1/2 at 0",
            a11.value == 0 && a11.prob == Rat(1, 2), rat_string(a11.prob));
    s.check("atom((1,2,3)) = 1/4 at 0",
            a123.value == 0 && a123.prob == Rat(1, 4), rat_string(a123.prob));
  }

  bool modp_ok = true;
  for (i64 p : {3, 5, 7}) {
    for (int rep = 0; rep < 15 && modp_ok; ++rep) {
      const int n = 2 + static_cast<int>(rng.bounded(6));
      const auto a = random_vector(rng, n, -9, 9);
      const ModAtom ma = atom_probability_mod_p(a, p);
      std::vector<i64> counts(static_cast<size_t>(p), 0);
      for (u64 mask = 0; mask < (u64{1} << n); ++mask) {
        i64 sum = 0;
        for (int i = 0; i < n; ++i) {
          sum += (mask >> i) & 1 ? a[static_cast<size_t>(i)]
                                 : -a[static_cast<size_t>(i)];
        }
        counts[static_cast<size_t>(((sum % p) + p) % p)]++;
      }
      for (i64 r = 0; r < p; ++r) {
        if (ma.dist[static_cast<size_t>(r)] !=
            Rat(counts[static_cast<size_t>(r)], Int(1) << n)) {
          modp_ok = false;
        }
      }
    }
  }
  s.check("mod-p residue law equals mask enumeration, p in {3,5,7}", modp_ok);

  bool levy_ok = true;
  for (int rep = 0; rep < 25 && levy_ok; ++rep) {
    const int n = 2 + static_cast<int>(rng.bounded(8));
    const auto w = random_vector(rng, n, -9, 9);
    const auto table = signed_sum_distribution(w, ProbMode::Exact);
    const double delta = rng.next_double() * 6.0;
    const LevyEstimate est = levy_concentration(table, delta);
    if (!near(est.value, levy_window_oracle(table, delta), 1e-12)) {
      levy_ok = false;
    }
    std::vector<double> wd(w.begin(), w.end());
    const LevyEstimate viaList =
        levy_concentration_values(enumerate_signed_sums(wd), delta);
    if (!near(est.value, viaList.value, 1e-12)) levy_ok = false;
  }
  s.check("Levy window scan equals quadratic oracle and list variant",
          levy_ok);

  {
    bool atom_delta0 = true;
    for (int rep = 0; rep < 10; ++rep) {
      const auto w = random_vector(rng, 8, -9, 9);
      const auto table = signed_sum_distribution(w, ProbMode::Exact);
      if (!near(levy_concentration(table, 0).value,
                static_cast<double>(atom_probability(w).prob), 1e-12)) {
        atom_delta0 = false;
      }
    }
    s.check("Levy at delta = 0 equals the atom probability", atom_delta0);
  }

  bool two_step_ok = true;
  std::string two_step_detail;
  for (int n : {4, 6, 8}) {
    for (int rep = 0; rep < 10; ++rep) {
      const Base base = sample_base(n, rng.next_u64());
      const auto v = random_vector(rng, n, -9, 9);
      for (int row = 0; row < n; ++row) {
        const RowAtomComparison cmp = two_step_row_atom(v, base, row);
        if (cmp.lhs > cmp.rhs) {
          two_step_ok = false;
          two_step_detail = "violated at n=" + std::to_string(n) +
                            " row=" + std::to_string(row);
        }
      }
    }
  }
  s.check("two-step row atom lhs <= rhs on random instances", two_step_ok,
          two_step_detail);
  return s.rep;
}

// ---------- rkstar ----------

SuiteReport suite_rkstar(u64 seed) {
  SuiteBuilder s("rkstar", seed);
  CounterRng rng(seed, kStreamSuite);

  const auto eval_all = [](const std::vector<i64>& a, int k, i64 p) {
    const Int brute = r_k_star_bruteforce(a, k, p);
    const Int dp = r_k_star_partition_dp(a, k, p);
    const Int disp = r_k_star(a, k, p).count;
    return std::tuple<Int, Int, Int>(brute, dp, disp);
  };

  {
    const auto [b1, d1, c1] = eval_all({1, 1}, 1, 5);
    s.check("R_1*((1,1)) mod 5 = 4 on all engines",
            b1 == 4 && d1 == 4 && c1 == 4,
            b1.str() + "," + d1.str() + "," + c1.str());
    const auto [b2, d2, c2] = eval_all({1, 2}, 1, 5);
    s.check("R_1*((1,2)) mod 5 = 0 on all engines",
            b2 == 0 && d2 == 0 && c2 == 0);
    const auto [b3, d3, c3] = eval_all({1, 4}, 1, 5);
    s.check("R_1*((1,4)) mod 5 = 4 on all engines",
            b3 == 4 && d3 == 4 && c3 == 4);
  }
  s.check("trivial bound values", r_k_star_trivial_bound(2, 1) == 16 &&
                                      r_k_star_trivial_bound(3, 1) == 36);
  s.check("k = 0 counts nothing",
          r_k_star_bruteforce({1, 2, 3}, 0, 5) == 0 &&
              r_k_star_partition_dp({1, 2, 3}, 0, 5) == 0 &&
              r_k_star({1, 2, 3}, 0, 5).count == 0);

  bool agree = true, bounded = true;
  std::string bad;
  for (i64 p : {3, 5, 7}) {
    for (int len = 1; len <= 5 && agree; ++len) {
      for (int k = 1; k <= 2; ++k) {
        for (int rep = 0; rep < 10; ++rep) {
          const auto a = random_vector(rng, len, 0, p - 1);
          const auto [brute, dp, disp] = eval_all(a, k, p);
          if (brute != dp || brute != disp) {
            agree = false;
            bad = "len=" + std::to_string(len) + " k=" + std::to_string(k) +
                  " p=" + std::to_string(p);
          }
          if (brute > r_k_star_trivial_bound(len, k)) bounded = false;
        }
      }
    }
  }
  s.check("three engines agree on random residue vectors", agree, bad);
  s.check("R_k* <= 2^{2k} |a|^{2k} on the same corpus", bounded);
  return s.rep;
}

// ---------- moments ----------

SuiteReport suite_moments(u64 seed) {
  SuiteBuilder s("moments", seed);
  CounterRng rng(seed, kStreamSuite);

  {
    const std::vector<double> ones(6, 1.0);
    s.check("slice E[X^2] of the all-ones vector is n^2",
            near(slice_second_moment(ones), 36.0, 1e-12));
    std::vector<double> e1(5, 0.0);
    e1[0] = 1.0;
    s.check("slice E[X^2] of e1 is 2", near(slice_second_moment(e1), 2.0, 1e-12));
    const std::vector<Rat> half{Rat(1, 2), Rat(1, 2), Rat(-1, 2), Rat(-1, 2)};
    s.check("slice E[X^2] of (1,1,-1,-1)/2 is 4/3",
            slice_second_moment_rat(half) == Rat(4, 3));
    const std::vector<double> ones4(4, 1.0);
    s.check("iid E[Y^2] of the all-ones vector at n=4 is 20",
            near(iid_second_moment(ones4), 20.0, 1e-12));
  }

  // exact-table oracle for both closed forms, in rationals
  bool closed_ok = true;
  for (int n = 2; n <= 12 && closed_ok; n += 2) {
    for (int rep = 0; rep < 25; ++rep) {
      const auto v = random_vector(rng, n, -9, 9);
      const std::vector<Rat> vr(v.begin(), v.end());
      if (slice_moment_exact(v, 1) != slice_second_moment_rat(vr)) {
        closed_ok = false;
        break;
      }
      Rat sum = 0;
      for (i64 x : v) sum += x;
      const auto table = signed_sum_distribution(v, ProbMode::Exact);
      Rat ey2 = 0;
      for (size_t i = 0; i < table.size(); ++i) {
        const Rat y = sum + table.values[i];
        ey2 += table.p_exact[i] * y * y;
      }
      if (ey2 != iid_second_moment_rat(vr)) {
        closed_ok = false;
        break;
      }
    }
  }
  s.check("closed forms equal exact enumeration (rational), n <= 12",
          closed_ok);

  bool ident_ok = true;
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 * (1 + static_cast<int>(rng.bounded(6)));
    const auto v = random_vector(rng, n, -9, 9);
    const std::vector<Rat> vr(v.begin(), v.end());
    const Rat ex2 = slice_second_moment_rat(vr);
    if (q_row_norm_expectation_rat(vr) != Rat(n) * ex2 / 4) ident_ok = false;
    Rat sum = 0, sumsq = 0;
    for (i64 x : v) {
      sum += x;
      sumsq += Rat(Int(x) * x);
    }
    if (iid_second_moment_rat(vr) - ex2 != (sum * sum - sumsq) / (n - 1)) {
      ident_ok = false;
    }
  }
  s.check("row-norm and iid-minus-slice identities (rational)", ident_ok);

  {
    // Monte Carlo oracle for E||Qv||^2 at n = 8
    const int n = 8;
    const auto v = random_vector(rng, n, -9, 9);
    std::vector<double> vd(v.begin(), v.end());
    const double formula = q_row_norm_expectation(vd);
    const i64 trials = 20000;
    CounterRng root = rng.substream(77);
    double sum = 0, sumsq = 0;
    for (i64 t = 0; t < trials; ++t) {
      const IntMatrix q = sample_q_via_base(n, root.substream(static_cast<u64>(t)).next_u64());
      double norm2 = 0;
      for (int i = 0; i < n; ++i) {
        double row = 0;
        for (int j = 0; j < n; ++j) {
          row += static_cast<double>(q.at(i, j)) * vd[static_cast<size_t>(j)];
        }
        norm2 += row * row;
      }
      sum += norm2;
      sumsq += norm2 * norm2;
    }
    const double mean = sum / trials;
    const double sd = std::sqrt(std::max(0.0, sumsq / trials - mean * mean));
    const double se = sd / std::sqrt(static_cast<double>(trials));
    s.check("E||Qv||^2 formula within 3 SE of Monte Carlo at n = 8",
            std::abs(mean - formula) <= 3 * se,
            "mean=" + fmt_double(mean) + " formula=" + fmt_double(formula) +
                " se=" + fmt_double(se));
  }

  s.check("moment-norm bound example (q=2, n=100, EX2=1)",
          near_rel(moment_norm_bound(2, 100, 1.0),
                   std::sqrt(1000.0) * 10.0, 1e-12));
  s.check("moment-norm bound vanishes with EX2 = 0",
          moment_norm_bound(3, 50, 0.0) == 0.0);
  s.check("mgf bound example evaluates to 1.016001",
          near(mgf_bound(1e-3, 1.0, 3, 100, 1.0), 1.016001, 1e-9));
  s.check("mgf bound at lambda = 0 is 1",
          mgf_bound(0.0, 1.0, 3, 100, 1.0) == 1.0);
  {
    bool threw = false;
    try {
      mgf_bound(1.0, 1.0, 3, 100, 1.0);
    } catch (const PreconditionError&) {
      threw = true;
    }
    s.check("mgf bound rejects lambda >= 1/(40 EX2)", threw);
  }

  {
    std::vector<i64> e1(6, 0);
    e1[0] = 1;
    const MomentCheck mc = slice_moment_empirical(e1, 2, MomentMode::Exact);
    s.check("E[X^4] for e1 is 8 with ratio < 1",
            near(mc.value, 8.0, 1e-12) && mc.within && mc.ratio < 1.0);
    const auto v = random_vector(rng, 12, -5, 5);
    const MomentCheck ex = slice_moment_empirical(v, 2, MomentMode::Exact);
    const MomentCheck mcmc = slice_moment_empirical(
        v, 2, MomentMode::MonteCarlo, rng.next_u64(), 40000);
    s.check("exact and Monte Carlo moments agree within 3 SE at n = 12",
            std::abs(ex.value - mcmc.value) <= 3 * mcmc.se,
            "exact=" + fmt_double(ex.value) + " mc=" + fmt_double(mcmc.value) +
                " se=" + fmt_double(mcmc.se));
  }
  return s.rep;
}

// ---------- models ----------

SuiteReport suite_models(u64 seed) {
  SuiteBuilder s("models", seed);
  CounterRng rng(seed, kStreamSuite);

  bool inv_ok = true;
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 * (1 + static_cast<int>(rng.bounded(8)));
    try {
      sample_rademacher(n, rng.next_u64()).check_invariants();
      sample_row_regular(n, rng.next_u64()).check_invariants();
      sample_q_via_base(n, rng.next_u64()).check_invariants();
      sample_base(n, rng.next_u64()).check_invariants();
    } catch (const PreconditionError&) {
      inv_ok = false;
    }
  }
  s.check("sampler outputs satisfy model invariants", inv_ok);

  // exact per-row pushforward: every row pattern equally often over
  // all (permutation, bits) pairs
  const auto pushforward_uniform = [](int n) {
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::map<u64, i64> hist;
    i64 total = 0;
    do {
      for (u64 bits = 0; bits < (u64{1} << (n / 2)); ++bits) {
        u64 pattern = 0;
        for (int k = 0; k < n / 2; ++k) {
          const int pos = perm[static_cast<size_t>(2 * k + ((bits >> k) & 1))];
          pattern |= u64{1} << pos;
        }
        hist[pattern]++;
        ++total;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    const Int expect_patterns = binomial(static_cast<unsigned>(n),
                                         static_cast<unsigned>(n / 2));
    if (Int(hist.size()) != expect_patterns) return false;
    for (const auto& [pat, count] : hist) {
      if (count * static_cast<i64>(hist.size()) != total) return false;
    }
    return true;
  };
  s.check("two-step row pushforward exactly uniform at n = 4 (16 of 96)",
          pushforward_uniform(4));
  s.check("two-step row pushforward exactly uniform at n = 6 (288 of 5760)",
          pushforward_uniform(6));

  {
    const Base b = sample_base(10, rng.next_u64());
    s.check("base text round-trip", base_from_text(base_to_text(b)).sigma ==
                                        b.sigma);
    const IntMatrix m = sample_row_regular(8, rng.next_u64());
    s.check("matrix text round-trip",
            matrix_from_text(matrix_to_text(m)).entries == m.entries);
  }

  {
    Base ident;
    ident.n = 4;
    ident.sigma.assign(4, {0, 1, 2, 3});
    const Matching m = ident.matching_of_row(0);
    s.check("identity-permutation matching pairs (0,1) and (2,3)",
            m[0] == 1 && m[1] == 0 && m[2] == 3 && m[3] == 2);
    s.check("union of a matching with itself has n/2 components",
            union_components(m, m) == 2);
    Base other;
    other.n = 4;
    other.sigma.assign(4, {0, 2, 1, 3});
    const Matching m2 = other.matching_of_row(0);
    s.check("crossing matchings union into one component",
            union_components(m, m2) == 1);
    s.check("cross edges between {0} and {1}",
            cross_edges(m, {0}, {1}) == 1 && cross_edges(m, {0}, {2}) == 0);
    const std::vector<i64> v{5, 1, 7, 2};
    const auto diff = difference_vector(v, ident, 0);
    s.check("difference vector of (5,1,7,2) over identity pairs is (4,5)",
            diff == std::vector<i64>({4, 5}));
    s.check("T_v with threshold 2 keeps every identity row",
            compute_T_v(v, ident, 2) == std::vector<int>({0, 1, 2, 3}));
  }

  {
    const ExponentProfile prof = ExponentProfile::desk();
    const int n = 12;
    bool fields_ok = true;
    std::string last;
    for (int rep = 0; rep < 5 && fields_ok; ++rep) {
      const Base b = sample_base(n, rng.next_u64());
      const u64 audit_seed = rng.next_u64();
      const BaseAudit audit = audit_base(b, prof, audit_seed);
      const BaseAudit again = audit_base(b, prof, audit_seed);
      fields_ok =
          audit.q1_threshold ==
              static_cast<int>(ceil_pow(n, prof.component_bound)) &&
          audit.q2_row_threshold == std::sqrt(double(n)) / 2.0 &&
          audit.q1_pass == (audit.q1_worst <= audit.q1_threshold) &&
          audit.q2_pass ==
              (audit.q2_worst_sparse_rows <= audit.q2_row_threshold) &&
          audit.pass() == (audit.q1_pass && audit.q2_pass) &&
          audit.q1_worst >= 1 && audit.q2_pairs_checked > 0 &&
          again.q1_worst == audit.q1_worst &&
          again.q2_worst_sparse_rows == audit.q2_worst_sparse_rows;
      last = "q1_worst=" + std::to_string(audit.q1_worst) + "/" +
             std::to_string(audit.q1_threshold) +
             " q2_sparse=" + std::to_string(audit.q2_worst_sparse_rows) +
             " method=" + audit.q2_method;
    }
    s.check("audit report fields are consistent and seed-stable", fields_ok,
            last);

    // every row the same matching: any two rows' union keeps n/2 = 6
    // components, over the ceil(12^0.6) = 5 allowance
    Base clone;
    clone.n = n;
    std::vector<int> ident(static_cast<size_t>(n));
    std::iota(ident.begin(), ident.end(), 0);
    clone.sigma.assign(static_cast<size_t>(n), ident);
    const BaseAudit audit = audit_base(clone, prof, 9);
    s.check("cloned-row base fails the q1 component audit",
            !audit.q1_pass && audit.q1_worst == n / 2 && !audit.pass(),
            "q1_worst=" + std::to_string(audit.q1_worst));
  }

  {
    const u64 k = rng.next_u64();
    const IntMatrix a = sample_q_via_base(8, k);
    const IntMatrix b = sample_q_via_base(8, k);
    s.check("two-step sampling is a pure function of the seed",
            a.entries == b.entries);
  }
  return s.rep;
}

// ---------- lcd ----------

SuiteReport suite_lcd(u64 seed) {
  SuiteBuilder s("lcd", seed);
  CounterRng rng(seed, kStreamSuite);

  for (double gamma : {0.01, 0.1, 0.5}) {
    LcdParams params;
    params.gamma = gamma;
    params.alpha = 1.0;
    params.theta_max = 10.0;
    std::vector<double> e1{1, 0, 0, 0};
    const LcdResult r = lcd_estimate(e1, params);
    const double target = 1.0 / (1.0 + gamma);
    s.check("e1 LCD at gamma " + fmt_double(gamma),
            r.status == LcdStatus::Found && near(r.theta, target, 1e-3),
            "theta=" + fmt_double(r.theta) + " target=" + fmt_double(target));

    const double inv = 1.0 / std::sqrt(2.0);
    std::vector<double> diag{inv, inv};
    const LcdResult r2 = lcd_estimate(diag, params);
    const double target2 = std::sqrt(2.0) / (1.0 + gamma);
    s.check("(1,1)/sqrt(2) LCD at gamma " + fmt_double(gamma),
            r2.status == LcdStatus::Found && near(r2.theta, target2, 2e-3),
            "theta=" + fmt_double(r2.theta) + " target=" + fmt_double(target2));
  }

  for (int n : {4, 9}) {
    LcdParams params;
    params.gamma = 0.1;
    params.alpha = 1.0;
    params.theta_max = 10.0;
    std::vector<double> a(static_cast<size_t>(n),
                          1.0 / std::sqrt(static_cast<double>(n)));
    const LcdResult r = lcd_estimate(a, params);
    const double target = std::sqrt(static_cast<double>(n)) / 1.1;
    s.check("all-ones direction LCD at n = " + std::to_string(n),
            r.status == LcdStatus::Found && near(r.theta, target, 5e-3),
            "theta=" + fmt_double(r.theta) + " target=" + fmt_double(target));
  }

  {
    // permutation and sign-flip invariance on a random unit vector
    std::vector<double> a(6);
    double norm2 = 0;
    for (auto& x : a) {
      x = rng.next_double() * 2 - 1;
      norm2 += x * x;
    }
    for (auto& x : a) x /= std::sqrt(norm2);
    LcdParams params;
    params.gamma = 0.2;
    params.alpha = 1.0;
    params.theta_max = 30.0;
    const LcdResult base = lcd_estimate(a, params);
    std::vector<double> flipped = a;
    for (auto& x : flipped) x = -x;
    std::reverse(flipped.begin(), flipped.end());
    const LcdResult moved = lcd_estimate(flipped, params);
    const bool both_found = base.status == LcdStatus::Found &&
                            moved.status == LcdStatus::Found;
    s.check("LCD invariant under permutation and sign flips",
            both_found && near(base.theta, moved.theta, 1e-9),
            "theta=" + fmt_double(base.theta) + " vs " +
                fmt_double(moved.theta));
    s.check("Found certificates carry positive margin",
            base.margin > 0 && moved.margin > 0);
  }

  {
    LcdParams params;
    params.gamma = 0.1;
    params.alpha = 1.0;
    std::vector<double> e1{1, 0, 0, 0};
    const ExponentProfile prof = ExponentProfile::paper();
    // threshold n^{3/4}/eta = 2.83/eta: above theta* for eta = 1,
    // below it for eta = 10
    const GammaReport g2 = classify_gamma(e1, 1.0, params, prof);
    const GammaReport g1 = classify_gamma(e1, 10.0, params, prof);
    s.check("e1 classifies Gamma2 when the threshold clears theta*",
            g2.cls == GammaClass::Gamma2);
    s.check("e1 classifies Gamma1 when the threshold sits below theta*",
            g1.cls == GammaClass::Gamma1);
    LcdParams coarse = params;
    coarse.grid_resolution = 0.5;
    const GammaReport gu = classify_gamma(e1, 10.0, coarse, prof);
    s.check("coarse grids classify Undetermined, never Gamma1",
            gu.cls == GammaClass::Undetermined);
  }
  return s.rep;
}

// ---------- structure ----------

SuiteReport suite_structure(u64 seed) {
  SuiteBuilder s("structure", seed);
  CounterRng rng(seed, kStreamSuite);

  {
    const BSetResult non =
        b_set_membership({1, 1}, 1, 2, 2, Rat(5), 5, rng.next_u64());
    s.check("(1,1) with t = 5 is NonMember witnessed by the full vector",
            non.status == BSetStatus::NonMember &&
                non.witness == std::vector<int>({0, 1}) &&
                non.witness_r_star == 4);
    const BSetResult mem =
        b_set_membership({1, 4}, 1, 2, 2, Rat(1), 5, rng.next_u64());
    s.check("(1,4) with t = 1 is Member", mem.status == BSetStatus::Member);
    const BSetResult triv =
        b_set_membership({1, 2, 3}, 1, 2, 2, Rat(0), 5, rng.next_u64());
    s.check("t = 0 is always Member", triv.status == BSetStatus::Member);
  }

  {
    bool monotone = true;
    for (int rep = 0; rep < 10; ++rep) {
      const auto a = random_vector(rng, 6, 1, 6);
      std::vector<BSetStatus> states;
      for (int t = 1; t <= 4; ++t) {
        states.push_back(
            b_set_membership(a, 1, 2, 2, Rat(t), 7, 1).status);
      }
      for (size_t i = 1; i < states.size(); ++i) {
        if (states[i] == BSetStatus::Member &&
            states[i - 1] == BSetStatus::NonMember) {
          monotone = false;
        }
      }
    }
    s.check("membership is monotone decreasing in t", monotone);
  }

  s.check("counting bound example (n=4,k=1,s1=s2=2,p=5,t=2) = 2.5e11",
          near_rel(std::exp(counting_bound_log(4, 1, 2, 2, 5, Rat(2))),
                   2.5e11, 1e-9));
  s.check("counting bound drops the t factor at t = 1",
          near_rel(counting_bound_log(6, 2, 4, 3, 7, Rat(1)),
                   6 * std::log(200.0) + 3 * (std::log(3.0) - std::log(4.0)) +
                       6 * std::log(7.0),
                   1e-12));

  s.check("mod-p bound example (p=101, n=160, k=1, M=2, R*=0, C=1)",
          near(halasz_rhs(160, 1, 2.0, 101, 0.0, 1.0), 0.19172, 5e-4),
          fmt_double(halasz_rhs(160, 1, 2.0, 101, 0.0, 1.0)));
  s.check("bound tends to 1/p as M grows",
          near(halasz_rhs(160, 1, 1e6, 101, 0.0, 1.0), 1.0 / 101, 1e-4));
  {
    const double base = halasz_rhs(160, 1, 2.0, 101, 100.0, 1.0);
    const double doubled = halasz_rhs(160, 1, 2.0, 101, 200.0, 1.0);
    const double expected = 100.0 / (4.0 * 160.0 * 160.0 * std::sqrt(2.0));
    s.check("bound is linear in R*", near_rel(doubled - base, expected, 1e-9));
  }
  {
    bool support_err = false, n_err = false, prime_err = false;
    std::vector<i64> tiny(static_cast<size_t>(160), 0);
    for (int i = 0; i < 10; ++i) tiny[static_cast<size_t>(i)] = 1;
    try {
      halasz_bound(tiny, HalaszParams{101, 1, 2.0, 1.0});
    } catch (const PreconditionError& e) {
      support_err = std::string(e.constraint()).find("30M") != std::string::npos;
    }
    std::vector<i64> shortv(static_cast<size_t>(100), 1);
    try {
      halasz_bound(shortv, HalaszParams{101, 1, 2.0, 1.0});
    } catch (const PreconditionError& e) {
      n_err = std::string(e.constraint()).find("80kM") != std::string::npos;
    }
    std::vector<i64> okv(static_cast<size_t>(160), 1);
    try {
      halasz_bound(okv, HalaszParams{100, 1, 2.0, 1.0});
    } catch (const PreconditionError&) {
      prime_err = true;
    }
    s.check("precondition errors name the violated constraint",
            support_err && n_err && prime_err);
  }

  {
    Base ident;
    ident.n = 4;
    ident.sigma.assign(4, {0, 1, 2, 3});
    const std::vector<i64> constant{3, 3, 3, 3};
    s.check("T_v of a constant vector is empty",
            compute_T_v(constant, ident, 1).empty());
    const std::vector<i64> distinct{5, 1, 7, 2};
    s.check("T_v with threshold 1 keeps all rows for distinct entries",
            compute_T_v(distinct, ident, 1).size() == 4);

    const WitnessReport all_same = witnessing_pair(distinct, ident, 1, 5, 1, 1);
    s.check("identical rows give the lexicographically first pair",
            all_same.found && all_same.i1 == 0 && all_same.i2 == 1);

    const WitnessReport none = witnessing_pair(constant, ident, 1, 5, 1, 1);
    s.check("|T_v| < 2 yields no witnessing pair", !none.found);
  }

  {
    // distinct scores: the two returned rows dominate every other row
    Base b;
    b.n = 6;
    b.sigma.assign(6, {0, 1, 2, 3, 4, 5});
    b.sigma[1] = {0, 2, 1, 4, 3, 5};
    b.sigma[2] = {0, 3, 1, 5, 2, 4};
    const std::vector<i64> v{9, 1, 4, 2, 8, 3};
    const WitnessReport rep = witnessing_pair(v, b, 1, 7, 1, 1);
    bool ordered = rep.found;
    if (rep.found) {
      const auto score_of = [&](int row) {
        for (const RowScore& rs : rep.scores) {
          if (rs.row == row) return rs;
        }
        return RowScore{};
      };
      const RowScore s1 = score_of(rep.i1), s2 = score_of(rep.i2);
      const auto geq = [](const RowScore& x, const RowScore& y) {
        if (x.finite != y.finite) return !x.finite;
        if (!x.finite) return true;
        return x.score >= y.score;
      };
      if (!geq(s1, s2)) ordered = false;
      for (const RowScore& other : rep.scores) {
        if (other.row == rep.i1 || other.row == rep.i2) continue;
        if (!geq(s2, other)) ordered = false;
      }
      if (std::find(rep.t_v.begin(), rep.t_v.end(), rep.i1) == rep.t_v.end() ||
          std::find(rep.t_v.begin(), rep.t_v.end(), rep.i2) == rep.t_v.end()) {
        ordered = false;
      }
      if (rep.i1 == rep.i2) ordered = false;
    }
    s.check("witnessing pair dominates all other rows on re-check", ordered);
  }
  return s.rep;
}

// ---------- spectral ----------

SuiteReport suite_spectral(u64 seed) {
  SuiteBuilder s("spectral", seed);
  CounterRng rng(seed, kStreamSuite);

  bool ones_ok = true;
  for (int n : {4, 8, 12}) {
    const IntMatrix q = sample_row_regular(n, rng.next_u64());
    i64 norm2 = 0;
    for (int i = 0; i < n; ++i) {
      i64 rowsum = 0;
      for (int j = 0; j < n; ++j) rowsum += q.at(i, j);
      norm2 += rowsum * rowsum;
    }
    if (norm2 != static_cast<i64>(n) * (n / 2) * (n / 2)) ones_ok = false;
  }
  s.check("||Q 1||^2 = n (n/2)^2 exactly (integer row sums)", ones_ok);

  bool window_ok = true;
  std::string window_detail;
  for (int n : {8, 16, 32}) {
    const IntMatrix q = sample_row_regular(n, rng.next_u64());
    const double top = operator_norm(q.to_real());
    const double lo = n / 2.0, hi = n / 2.0 + 2.0 * std::sqrt(n);
    if (top < lo - 1e-9 || top > hi) {
      window_ok = false;
      window_detail = "n=" + std::to_string(n) + " top=" + fmt_double(top);
    }
  }
  s.check("operator norm of Q sits in [n/2, n/2 + 2 sqrt(n)]", window_ok,
          window_detail);

  {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
    d(0, 0) = 1;
    d(1, 1) = 2;
    d(2, 2) = 3;
    const SpectralSummary sum = smallest_singular_value(d);
    s.check("diag(1,2,3) has s_min = 1 and s_max = 3",
            near(sum.s_min, 1.0, 1e-12) && near(sum.s_max, 3.0, 1e-12) &&
                sum.converged);
    s.check("restricted norm of the identity is 1",
            near(restricted_norm_H(Eigen::MatrixXd::Identity(5, 5)), 1.0,
                 1e-12));
    bool rest_ok = true;
    for (int rep = 0; rep < 10; ++rep) {
      const IntMatrix m = sample_rademacher(8, rng.next_u64());
      const Eigen::MatrixXd mr = m.to_real();
      if (restricted_norm_H(mr) > operator_norm(mr) + 1e-9) rest_ok = false;
    }
    s.check("restricted norm never exceeds the operator norm", rest_ok);
  }

  {
    // cofactor-expansion oracle for the Bareiss determinant
    bool det_ok = true;
    const auto cofactor = [](const auto& self, const IntMatrix& m,
                             std::vector<int> cols, int row) -> Int {
      if (cols.empty()) return 1;
      Int acc = 0;
      for (size_t c = 0; c < cols.size(); ++c) {
        std::vector<int> rest;
        for (size_t j = 0; j < cols.size(); ++j) {
          if (j != c) rest.push_back(cols[j]);
        }
        const Int term = Int(m.at(row, cols[c])) * self(self, m, rest, row + 1);
        acc += (c % 2 == 0) ? term : -term;
      }
      return acc;
    };
    for (int rep = 0; rep < 40; ++rep) {
      const int n = 1 + static_cast<int>(rng.bounded(4));
      IntMatrix m = IntMatrix::zero(n, ModelTag::External);
      for (auto& e : m.entries) {
        e = static_cast<i64>(rng.bounded(19)) - 9;
      }
      std::vector<int> cols(static_cast<size_t>(n));
      std::iota(cols.begin(), cols.end(), 0);
      if (exact_determinant(m) != cofactor(cofactor, m, cols, 0)) {
        det_ok = false;
      }
    }
    s.check("Bareiss determinant equals cofactor expansion, n <= 4", det_ok);
  }

  {
    s.check("Rademacher n = 1 is never singular",
            exact_singularity_frequency(1, ExperimentModel::IidRademacher) ==
                Rat(0));
    s.check("Rademacher n = 2 singular frequency is exactly 1/2",
            exact_singularity_frequency(2, ExperimentModel::IidRademacher) ==
                Rat(1, 2));
    s.check("row-regular n = 2 singular frequency is exactly 1/2",
            exact_singularity_frequency(2, ExperimentModel::RowRegular) ==
                Rat(1, 2));
  }
  return s.rep;
}

// ---------- slice-mgf calibration ----------

SuiteReport suite_slice_mgf(u64 seed) {
  SuiteBuilder s("slice-mgf", seed);
  CounterRng rng(seed, kStreamSuite);
  const auto corpus = calib::calibration_corpus();
  const calib::CalibrationMeasurement m = calib::measure_slice_constants();

  const auto within_slack = [](double measured, double frozen) {
    return measured <= frozen * (1 + calib::kCalibrationSlack) &&
           measured >= frozen * (1 - calib::kCalibrationSlack);
  };
  s.check("O_q calibration matches frozen values within 5%",
          within_slack(m.oq2, calib::kOq2) &&
              within_slack(m.oq3, calib::kOq3) &&
              within_slack(m.oq4, calib::kOq4) &&
              within_slack(m.oq5, calib::kOq5),
          "measured q=2..5: " + fmt_double(m.oq2) + " " + fmt_double(m.oq3) +
              " " + fmt_double(m.oq4) + " " + fmt_double(m.oq5));
  s.check("O_t calibration stays at or below the frozen values",
          m.ot3 <= calib::kOt3 * (1 + calib::kCalibrationSlack) &&
              m.ot4 <= calib::kOt4 * (1 + calib::kCalibrationSlack) &&
              m.ot5 <= calib::kOt5 * (1 + calib::kCalibrationSlack),
          "measured t=3..5: " + fmt_double(m.ot3) + " " + fmt_double(m.ot4) +
              " " + fmt_double(m.ot5));

  bool dominated = true;
  for (const auto& v : corpus) {
    const std::vector<Rat> vr(v.begin(), v.end());
    const double ex2 = static_cast<double>(slice_second_moment_rat(vr));
    if (ex2 == 0) continue;
    for (double frac : {0.2, 0.5, 0.9}) {
      const double lambda = frac / (40.0 * ex2);
      if (slice_mgf_from_table(v, lambda) >
          mgf_bound(lambda, ex2, 3, static_cast<i64>(v.size()), calib::kOt3) +
              1e-12) {
        dominated = false;
      }
    }
  }
  s.check("frozen-O_t mgf bound dominates the exact MGF on the corpus",
          dominated);

  bool high_moment_ok = true;
  for (const auto& v : corpus) {
    for (int q : {1, 2, 3, 4, 5}) {
      const MomentCheck mc = slice_moment_empirical(v, q, MomentMode::Exact);
      if (!mc.within) high_moment_ok = false;
    }
  }
  s.check("high-moment bound ratio <= 1 across the corpus", high_moment_ok);

  {
    const int n = 16;
    std::vector<double> ones(static_cast<size_t>(n),
                             1.0 / std::sqrt(static_cast<double>(n)));
    const InvertibilityCheck q = fixed_vector_invertibility_check(
        ones, 400, rng.next_u64(), FixedVectorModel::QRowRegular);
    s.check("Q maps the all-ones direction far from zero every time",
            q.hits == 0);
    std::vector<double> e1(static_cast<size_t>(n), 0.0);
    e1[0] = 1.0;
    const InvertibilityCheck me1 = fixed_vector_invertibility_check(
        e1, 400, rng.next_u64(), FixedVectorModel::MRademacher);
    s.check("M e1 has norm sqrt(n) > sqrt(n)/2 every time", me1.hits == 0);
    std::vector<double> v(static_cast<size_t>(40));
    double norm2 = 0;
    for (auto& x : v) {
      x = rng.next_double() * 2 - 1;
      norm2 += x * x;
    }
    for (auto& x : v) x /= std::sqrt(norm2);
    // a mean-zero random direction puts E||Qv||^2 = (n/4) EX2 right
    // at the threshold, so the small-image event is rare, not absent
    const InvertibilityCheck rnd = fixed_vector_invertibility_check(
        v, 2000, rng.next_u64(), FixedVectorModel::QRowRegular);
    s.check("random fixed vector at n = 40 small-image rate below 1%",
            rnd.hits <= 20, "hits=" + std::to_string(rnd.hits));
  }
  return s.rep;
}

// ---------- harness ----------

SuiteReport suite_harness(u64 seed) {
  SuiteBuilder s("harness", seed);

  ExperimentConfig cfg;
  cfg.model = ExperimentModel::IidRademacher;
  cfg.n_list = {6};
  cfg.trials = 400;
  cfg.eta_grid = {0.0, 0.05, 0.2, 0.8};
  cfg.seed = seed;

  const std::string csv1 = tail_curve_csv(run_tail_experiment(cfg));
  const std::string csv2 = tail_curve_csv(run_tail_experiment(cfg));
  s.check("rerun with identical config and seed is byte-identical",
          csv1 == csv2);
  const std::string serial =
      tail_curve_csv(run_tail_experiment(cfg, ExecPolicy::Serial));
  s.check("serial and OpenMP runs produce identical CSV", csv1 == serial);

  {
    const TailCurve curve = run_tail_experiment(cfg);
    bool monotone = true;
    i64 prev = -1;
    for (const TailCell& c : curve.cells) {
      if (c.eta == 0) continue;  // the exact-singularity column
      if (c.hits < prev) monotone = false;
      prev = c.hits;
    }
    s.check("empirical CDF is monotone in eta", monotone);
    bool se_ok = true;
    for (const TailCell& c : curve.cells) {
      if (c.hits == 0 &&
          !near_rel(c.se, 1.0 - std::pow(0.05, 1.0 / c.trials), 1e-12)) {
        se_ok = false;
      }
    }
    s.check("zero-hit cells carry the Clopper-Pearson upper bound", se_ok);
  }

  {
    ExperimentConfig round = experiment_config_from_json(
        experiment_config_to_json(cfg));
    s.check("config JSON round-trip",
            round.model == cfg.model && round.n_list == cfg.n_list &&
                round.trials == cfg.trials && round.eta_grid == cfg.eta_grid &&
                round.seed == cfg.seed && round.profile == cfg.profile);
    bool bad_json = false, bad_model = false;
    try {
      experiment_config_from_json("{nope");
    } catch (const PreconditionError&) {
      bad_json = true;
    }
    try {
      experiment_config_from_json("{\"model\": \"heisenberg\"}");
    } catch (const PreconditionError&) {
      bad_model = true;
    }
    s.check("malformed configs are rejected", bad_json && bad_model);
  }

  s.check("union bound example (C=1, n=10, cap=1e-3)",
          near_rel(union_bound_report_log(1.0, 10, 1e-3),
                   10.0 * std::log(0.1), 1e-12));
  s.check("union bound with cap = 1 is n log(100 C)",
          near_rel(union_bound_report_log(2.0, 7, 1.0), 7.0 * std::log(200.0),
                   1e-12));

  {
    const std::string svg1 = emit_plot_svg(csv1);
    const std::string svg2 = emit_plot_svg(csv1);
    s.check("plot is a pure function of the CSV",
            svg1 == svg2 && svg1.find("<svg") == 0);
    bool schema_err = false, empty_err = false;
    try {
      emit_plot_svg("model,n\n");
    } catch (const PreconditionError&) {
      schema_err = true;
    }
    try {
      emit_plot_svg("model,n,eta,trials,hits,p_hat,se,reference\n");
    } catch (const PreconditionError&) {
      empty_err = true;
    }
    s.check("plot rejects schema drift and empty grids",
            schema_err && empty_err);
  }

  {
    // eta = 0 column against the exact enumeration at n = 2
    ExperimentConfig tiny;
    tiny.model = ExperimentModel::IidRademacher;
    tiny.n_list = {2};
    tiny.trials = 2000;
    tiny.eta_grid = {0.0};
    tiny.seed = seed + 1;
    const TailCurve curve = run_tail_experiment(tiny);
    const double exact = static_cast<double>(
        exact_singularity_frequency(2, ExperimentModel::IidRademacher));
    const double p_hat = curve.cells.at(0).p_hat;
    const double se =
        std::sqrt(exact * (1 - exact) / static_cast<double>(tiny.trials));
    s.check("singularity frequency at n = 2 matches the exact 1/2",
            std::abs(p_hat - exact) <= 3 * se,
            "p_hat=" + fmt_double(p_hat) + " exact=" + fmt_double(exact));
  }

  {
    bool budget = false, discrete = false;
    try {
      exact_singularity_frequency(6, ExperimentModel::IidRademacher);
    } catch (const BudgetError&) {
      budget = true;
    }
    try {
      exact_singularity_frequency(2, ExperimentModel::GaussianBaseline);
    } catch (const PreconditionError&) {
      discrete = true;
    }
    s.check("enumeration budgets are enforced", budget && discrete);
  }

  {
    bool fmt_ok = true;
    for (double x : {0.1, 1.0 / 3.0, 1e-17, -2.5e300, 3.0, 0.0}) {
      if (std::strtod(fmt_double(x).c_str(), nullptr) != x) fmt_ok = false;
    }
    s.check("numeric formatting round-trips exactly", fmt_ok);
  }
  return s.rep;
}

}  // namespace

std::vector<std::string> registered_suites() {
  return {"anticonc-oracle", "rkstar", "moments", "models", "lcd",
          "structure", "spectral", "slice-mgf", "harness"};
}

SuiteReport run_invariant_suite(const std::string& name, u64 seed) {
  if (name == "anticonc-oracle") return suite_anticonc(seed);
  if (name == "rkstar") return suite_rkstar(seed);
  if (name == "moments") return suite_moments(seed);
  if (name == "models") return suite_models(seed);
  if (name == "lcd") return suite_lcd(seed);
  if (name == "structure") return suite_structure(seed);
  if (name == "spectral") return suite_spectral(seed);
  if (name == "slice-mgf") return suite_slice_mgf(seed);
  if (name == "harness") return suite_harness(seed);
  throw PreconditionError("suite registered", "unknown suite '" + name + "'");
}

namespace calib {

std::vector<std::vector<i64>> calibration_corpus() {
  CounterRng rng(1, kStreamSuite + 1);
  std::vector<std::vector<i64>> corpus;
  for (int n = 4; n <= 12; n += 2) {
    std::vector<i64> e1(static_cast<size_t>(n), 0);
    e1[0] = 1;
    corpus.push_back(e1);
    std::vector<i64> pm(static_cast<size_t>(n), 0);
    pm[0] = 9;
    pm[1] = -9;
    corpus.push_back(pm);
    corpus.push_back(std::vector<i64>(static_cast<size_t>(n), 1));
    for (int rep = 0; rep < 6; ++rep) {
      corpus.push_back(random_vector(rng, n, -9, 9));
    }
  }
  return corpus;
}

CalibrationMeasurement measure_slice_constants() {
  const auto corpus = calibration_corpus();
  CalibrationMeasurement m;

  const auto measured_oq = [&](int q) {
    double worst = 0;
    for (const auto& v : corpus) {
      const std::vector<Rat> vr(v.begin(), v.end());
      const Rat ex2 = slice_second_moment_rat(vr);
      if (ex2 == 0) continue;
      const Rat ratio = slice_moment_exact(v, q) / rat_pow(ex2, q);
      worst = std::max(worst, static_cast<double>(ratio));
    }
    return worst;
  };
  m.oq2 = measured_oq(2);
  m.oq3 = measured_oq(3);
  m.oq4 = measured_oq(4);
  m.oq5 = measured_oq(5);

  // tail-free ratio (mgf - 1) / (lambda^2 EX2^2): over this corpus
  // the quadratic term alone covers the whole mgf excess, which makes
  // the frozen value a stricter sentinel than solving with the
  // 200 sqrt(n) 20^t lambda^t EX2^t term subtracted (that solve goes
  // negative everywhere and clamps to a vacuous zero)
  const auto measured_ot = [&]() {
    double worst = 0;
    for (const auto& v : corpus) {
      const std::vector<Rat> vr(v.begin(), v.end());
      const double ex2 = static_cast<double>(slice_second_moment_rat(vr));
      if (ex2 == 0) continue;
      for (double frac : {0.2, 0.5, 0.9}) {
        const double lambda = frac / (40.0 * ex2);
        const double mgf = slice_mgf_from_table(v, lambda);
        const double need = (mgf - 1.0) / (lambda * lambda * ex2 * ex2);
        worst = std::max(worst, need);
      }
    }
    return worst;
  };
  const double ot = measured_ot();
  m.ot3 = ot;
  m.ot4 = ot;
  m.ot5 = ot;
  return m;
}

}  // namespace calib

}  // namespace lsv
