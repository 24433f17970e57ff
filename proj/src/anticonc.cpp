#include "lsv/anticonc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "lsv/errors.hpp"

namespace lsv {

namespace {

i64 abs_sum(const std::vector<i64>& w, i64 cap) {
  i64 s = 0;
  for (i64 x : w) {
    s += x < 0 ? -x : x;
    if (s > cap)
      throw BudgetError("value range",
                        "sum|w_i| exceeds " + std::to_string(cap));
  }
  return s;
}

template <class Count>
DistTable table_from_counts(const std::vector<Count>& cnt, i64 offset,
                            const Int& total, ProbMode mode) {
  DistTable t;
  t.mode = mode;
  for (size_t j = 0; j < cnt.size(); ++j) {
    if (cnt[j] == 0) continue;
    t.values.push_back(static_cast<i64>(j) - offset);
    if (mode == ProbMode::Exact)
      t.p_exact.emplace_back(Int(cnt[j]), total);
    else
      t.p_dbl.push_back(static_cast<double>(cnt[j]) /
                        static_cast<double>(total));
  }
  return t;
}

}  // namespace

double DistTable::prob_dbl(size_t i) const {
  return mode == ProbMode::Exact ? p_exact[i].convert_to<double>() : p_dbl[i];
}

void DistTable::check_invariants() const {
  if (!std::is_sorted(values.begin(), values.end()) ||
      std::adjacent_find(values.begin(), values.end()) != values.end())
    throw PreconditionError("support sorted distinct", "DistTable");
  if (mode == ProbMode::Exact) {
    if (p_exact.size() != values.size())
      throw PreconditionError("table shape", "exact probs mismatch");
    Rat sum = 0;
    for (const Rat& p : p_exact) sum += p;
    if (sum != 1) throw PreconditionError("probs sum to 1", rat_string(sum));
  } else {
    if (p_dbl.size() != values.size())
      throw PreconditionError("table shape", "double probs mismatch");
    double sum = 0;
    for (double p : p_dbl) sum += p;
    if (std::fabs(sum - 1.0) > 1e-12)
      throw PreconditionError("probs sum to 1", std::to_string(sum));
  }
}

std::string DistTable::to_csv() const {
  std::string out = "value,probability\n";
  char buf[64];
  for (size_t i = 0; i < values.size(); ++i) {
    out += std::to_string(values[i]);
    out += ',';
    if (mode == ProbMode::Exact) {
      out += rat_string(p_exact[i]);
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", p_dbl[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

DistTable signed_sum_distribution(const std::vector<i64>& w, ProbMode mode,
                                  i64 max_cells) {
  const i64 range = abs_sum(w, max_cells);  // cells = 2*range+1 <= 2*cap+1
  const i64 cells = 2 * range + 1;
  const size_t n = w.size();

  if (mode == ProbMode::Exact) {
    std::vector<Int> cnt(cells), next(cells);
    cnt[range] = 1;
    for (i64 x : w) {
      std::fill(next.begin(), next.end(), Int(0));
      for (i64 j = 0; j < cells; ++j) {
        if (cnt[j] == 0) continue;
        next[j - x] += cnt[j];  // in-range: |value +- x| <= range
        next[j + x] += cnt[j];
      }
      cnt.swap(next);
    }
    return table_from_counts(cnt, range, int_pow(2, n), ProbMode::Exact);
  }

  std::vector<double> cnt(cells, 0.0), next(cells, 0.0);
  cnt[range] = 1.0;
  for (i64 x : w) {
    std::fill(next.begin(), next.end(), 0.0);
    for (i64 j = 0; j < cells; ++j) {
      if (cnt[j] == 0.0) continue;
      next[j - x] += 0.5 * cnt[j];
      next[j + x] += 0.5 * cnt[j];
    }
    cnt.swap(next);
  }
  DistTable t;
  t.mode = ProbMode::Double;
  for (i64 j = 0; j < cells; ++j)
    if (cnt[j] != 0.0) {
      t.values.push_back(j - range);
      t.p_dbl.push_back(cnt[j]);
    }
  return t;
}

Atom atom_probability(const std::vector<i64>& w, i64 max_cells) {
  DistTable t = signed_sum_distribution(w, ProbMode::Exact, max_cells);
  Atom a;
  a.value = t.values.front();
  a.prob = t.p_exact.front();
  for (size_t i = 1; i < t.size(); ++i)
    if (t.p_exact[i] > a.prob) {
      a.prob = t.p_exact[i];
      a.value = t.values[i];
    }
  return a;
}

ModAtom atom_probability_mod_p(const std::vector<i64>& a, i64 p) {
  if (p < 3 || !is_prime(p))
    throw PreconditionError("p odd prime", std::to_string(p));
  std::vector<Int> cnt(p), next(p);
  cnt[0] = 1;
  for (i64 x : a) {
    i64 r = ((x % p) + p) % p;
    for (i64 j = 0; j < p; ++j) {
      if (cnt[j] == 0) continue;
      next[(j + r) % p] += cnt[j];
      next[(j - r + p) % p] += cnt[j];
    }
    cnt.swap(next);
    std::fill(next.begin(), next.end(), Int(0));
  }
  const Int total = int_pow(2, static_cast<unsigned>(a.size()));
  ModAtom out;
  out.dist.resize(p);
  Int best = -1;
  for (i64 j = 0; j < p; ++j) {
    out.dist[j] = Rat(cnt[j], total);
    if (cnt[j] > best) {
      best = cnt[j];
      out.residue = j;
    }
  }
  out.prob = Rat(best, total);
  return out;
}

DistTable slice_sum_distribution(const std::vector<i64>& v, ProbMode mode,
                                 i64 max_cells) {
  const int n = static_cast<int>(v.size());
  if (n < 2 || n % 2 != 0)
    throw PreconditionError("n even", "slice_sum_distribution");
  const int half = n / 2;
  const i64 spread = abs_sum(v, max_cells / 4);
  const i64 offset = 2 * spread;  // X contributions are 0 or 2*v_i
  const i64 cells = 4 * spread + 1;
  if ((half + 1) * cells > max_cells)
    throw BudgetError("slice DP table",
                      std::to_string((half + 1) * cells) + " cells");

  // cnt[t][j]: slice prefixes using t plus-ones with partial sum
  // j - offset. Exact counts; double mode just divides at the end.
  std::vector<std::vector<Int>> cnt(half + 1, std::vector<Int>(cells)),
      next(half + 1, std::vector<Int>(cells));
  cnt[0][offset] = 1;
  for (int i = 0; i < n; ++i) {
    for (auto& rowv : next) std::fill(rowv.begin(), rowv.end(), Int(0));
    const i64 step = 2 * v[i];
    const int tmax = std::min(i, half);
    for (int t = 0; t <= tmax; ++t)
      for (i64 j = 0; j < cells; ++j) {
        const Int& c = cnt[t][j];
        if (c == 0) continue;
        next[t][j] += c;  // x_i = -1: contributes nothing
        if (t < half) next[t + 1][j + step] += c;
      }
    cnt.swap(next);
  }

  const Int total = binomial(n, half);
  if (mode == ProbMode::Exact)
    return table_from_counts(cnt[half], offset, total, ProbMode::Exact);
  return table_from_counts(cnt[half], offset, total, ProbMode::Double);
}

namespace {

LevyEstimate window_scan_exact(const DistTable& t, double delta) {
  LevyEstimate est;
  est.delta = delta;
  est.exact = true;
  const size_t m = t.size();
  if (t.mode == ProbMode::Exact) {
    Rat best = 0, window = 0;
    size_t j = 0;
    for (size_t i = 0; i < m; ++i) {
      if (j < i) {
        j = i;
        window = 0;
      }
      while (j < m &&
             static_cast<double>(t.values[j] - t.values[i]) <= 2.0 * delta) {
        window += t.p_exact[j];
        ++j;
      }
      if (window > best) best = window;
      window -= t.p_exact[i];
    }
    est.value = best.convert_to<double>();
  } else {
    double best = 0, window = 0;
    size_t j = 0;
    for (size_t i = 0; i < m; ++i) {
      if (j < i) {
        j = i;
        window = 0;
      }
      while (j < m &&
             static_cast<double>(t.values[j] - t.values[i]) <= 2.0 * delta) {
        window += t.p_dbl[j];
        ++j;
      }
      best = std::max(best, window);
      window -= t.p_dbl[i];
    }
    est.value = best;
  }
  return est;
}

}  // namespace

LevyEstimate levy_concentration(const DistTable& table, double delta) {
  if (delta < 0) throw PreconditionError("delta >= 0", std::to_string(delta));
  return window_scan_exact(table, delta);
}

LevyEstimate levy_concentration_values(std::vector<double> values,
                                       double delta) {
  if (delta < 0) throw PreconditionError("delta >= 0", std::to_string(delta));
  if (values.empty()) throw PreconditionError("nonempty values", "levy scan");
  std::sort(values.begin(), values.end());
  const size_t m = values.size();
  size_t best = 0, j = 0;
  for (size_t i = 0; i < m; ++i) {
    if (j < i) j = i;
    while (j < m && values[j] - values[i] <= 2.0 * delta) ++j;
    best = std::max(best, j - i);
  }
  LevyEstimate est;
  est.delta = delta;
  est.exact = true;
  est.value = static_cast<double>(best) / static_cast<double>(m);
  return est;
}

LevyEstimate levy_concentration_mc(std::vector<double> samples, double delta) {
  const i64 trials = static_cast<i64>(samples.size());
  LevyEstimate est = levy_concentration_values(std::move(samples), delta);
  est.exact = false;
  est.trials = trials;
  est.se = std::sqrt(est.value * (1.0 - est.value) /
                     static_cast<double>(trials));
  return est;
}

RowAtomComparison two_step_row_atom(const std::vector<i64>& v,
                                    const Base& base, int row, int max_bits) {
  base.check_invariants();
  const int n = base.n;
  if (static_cast<int>(v.size()) != n)
    throw PreconditionError("dimensions", "|v| != n");
  if (row < 0 || row >= n) throw PreconditionError("row index", "two_step");
  const int half = n / 2;
  if (half > max_bits)
    throw BudgetError("bit enumeration", "2^" + std::to_string(half));

  const auto& s = base.sigma[row];
  std::unordered_map<i64, i64> hits;
  const u64 total = 1ULL << half;
  for (u64 mask = 0; mask < total; ++mask) {
    i64 sum = 0;
    for (int k = 0; k < half; ++k)
      sum += (mask >> k) & 1 ? v[s[2 * k]] : v[s[2 * k + 1]];
    ++hits[sum];
  }
  i64 best = 0;
  for (const auto& [value, count] : hits) best = std::max(best, count);

  RowAtomComparison cmp;
  cmp.lhs = Rat(best, Int(total));
  cmp.rhs = atom_probability(difference_vector(v, base, row)).prob;
  return cmp;
}

std::vector<double> enumerate_signed_sums(const std::vector<double>& w,
                                          int max_n) {
  const int n = static_cast<int>(w.size());
  if (n > max_n)
    throw BudgetError("sign enumeration", "2^" + std::to_string(n));
  std::vector<double> sums{0.0};
  sums.reserve(size_t{1} << n);
  for (double x : w) {
    const size_t m = sums.size();
    for (size_t i = 0; i < m; ++i) {
      double s = sums[i];
      sums[i] = s + x;
      sums.push_back(s - x);
    }
  }
  return sums;
}

std::vector<double> enumerate_slice_sums(const std::vector<double>& a,
                                         int max_n) {
  const int n = static_cast<int>(a.size());
  if (n < 2 || n % 2 != 0)
    throw PreconditionError("n even", "enumerate_slice_sums");
  if (n > max_n)
    throw BudgetError("slice enumeration", "C(" + std::to_string(n) + "," +
                                               std::to_string(n / 2) + ")");
  std::vector<double> out;
  // Depth-first over sign choices with exactly n/2 plus-ones.
  struct Frame {
    int i;
    int plus;
    double sum;
  };
  std::vector<Frame> work{{0, 0, 0.0}};
  const int half = n / 2;
  while (!work.empty()) {
    Frame f = work.back();
    work.pop_back();
    if (f.i == n) {
      out.push_back(f.sum);
      continue;
    }
    const int remaining = n - f.i;
    if (f.plus < half && half - f.plus <= remaining)
      work.push_back({f.i + 1, f.plus + 1, f.sum + a[f.i]});
    if ((f.i - f.plus) < half)  // minus slots also capped at n/2
      work.push_back({f.i + 1, f.plus, f.sum - a[f.i]});
  }
  return out;
}

}  // namespace lsv
