#include "lsv/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lsv/errors.hpp"

namespace lsv {

namespace {

// Distinct root streams per sampler family keep e.g. the base and the
// bit choices of sample_q_via_base independent even under one seed.
constexpr u64 kStreamRademacher = 1;
constexpr u64 kStreamRowRegular = 2;
constexpr u64 kStreamGaussian = 3;
constexpr u64 kStreamBase = 4;
constexpr u64 kStreamBits = 5;

void require_even(int n, const char* who) {
  if (n < 2 || n % 2 != 0)
    throw PreconditionError("n even",
                            std::string(who) + " needs even n >= 2, got " +
                                std::to_string(n));
}

// First k entries of a uniform random permutation of [0, n).
std::vector<int> random_prefix(int n, int k, CounterRng& rng) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < k; ++i) {
    int j = i + static_cast<int>(rng.bounded(static_cast<u64>(n - i)));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace

Matching Base::matching_of_row(int i) const {
  if (i < 0 || i >= n)
    throw PreconditionError("row index", "row " + std::to_string(i));
  Matching partner(n, -1);
  const auto& s = sigma[i];
  for (int k = 0; k < n / 2; ++k) {
    partner[s[2 * k]] = s[2 * k + 1];
    partner[s[2 * k + 1]] = s[2 * k];
  }
  return partner;
}

void Base::check_invariants() const {
  require_even(n, "Base");
  if (sigma.size() != static_cast<size_t>(n))
    throw PreconditionError("base shape", "expected n permutations");
  std::vector<char> seen(n);
  for (const auto& s : sigma) {
    if (s.size() != static_cast<size_t>(n))
      throw PreconditionError("permutation length", "row of wrong length");
    std::fill(seen.begin(), seen.end(), 0);
    for (int x : s) {
      if (x < 0 || x >= n || seen[x])
        throw PreconditionError("permutation", "row is not a bijection");
      seen[x] = 1;
    }
  }
}

IntMatrix sample_rademacher(int n, u64 seed) {
  if (n < 1) throw PreconditionError("n >= 1", "sample_rademacher");
  IntMatrix m = IntMatrix::zero(n, ModelTag::IidRademacher);
  CounterRng root(seed, kStreamRademacher);
  for (int i = 0; i < n; ++i) {
    CounterRng row = root.substream(static_cast<u64>(i));
    for (int j = 0; j < n; ++j) m.at(i, j) = row.rademacher();
  }
  return m;
}

IntMatrix sample_row_regular(int n, u64 seed) {
  require_even(n, "sample_row_regular");
  IntMatrix m = IntMatrix::zero(n, ModelTag::RowRegular);
  CounterRng root(seed, kStreamRowRegular);
  for (int i = 0; i < n; ++i) {
    CounterRng row = root.substream(static_cast<u64>(i));
    for (int j : random_prefix(n, n / 2, row)) m.at(i, j) = 1;
  }
  return m;
}

Eigen::MatrixXd sample_gaussian(int n, u64 seed) {
  if (n < 1) throw PreconditionError("n >= 1", "sample_gaussian");
  Eigen::MatrixXd m(n, n);
  CounterRng root(seed, kStreamGaussian);
  for (int i = 0; i < n; ++i) {
    CounterRng row = root.substream(static_cast<u64>(i));
    for (int j = 0; j < n; j += 2) {
      auto [g0, g1] = row.gaussian_pair();
      m(i, j) = g0;
      if (j + 1 < n) m(i, j + 1) = g1;
    }
  }
  return m;
}

Base sample_base(int n, u64 seed) {
  require_even(n, "sample_base");
  Base b;
  b.n = n;
  b.sigma.resize(n);
  CounterRng root(seed, kStreamBase);
  for (int i = 0; i < n; ++i) {
    CounterRng row = root.substream(static_cast<u64>(i));
    b.sigma[i] = random_prefix(n, n, row);
  }
  return b;
}

BitChoices sample_bit_choices(int n, u64 seed) {
  require_even(n, "sample_bit_choices");
  BitChoices bits;
  bits.n = n;
  bits.xi.resize(n);
  CounterRng root(seed, kStreamBits);
  for (int i = 0; i < n; ++i) {
    CounterRng row = root.substream(static_cast<u64>(i));
    bits.xi[i].resize(n / 2);
    for (int k = 0; k < n / 2; ++k)
      bits.xi[i][k] = static_cast<std::uint8_t>(row.next_u64() & 1);
  }
  return bits;
}

IntMatrix assemble_from_base(const Base& base, const BitChoices& xi) {
  base.check_invariants();
  if (xi.n != base.n || xi.xi.size() != static_cast<size_t>(base.n))
    throw PreconditionError("dimensions", "bit choices do not match base");
  const int n = base.n;
  IntMatrix m = IntMatrix::zero(n, ModelTag::BaseAssembled);
  for (int i = 0; i < n; ++i) {
    if (xi.xi[i].size() != static_cast<size_t>(n / 2))
      throw PreconditionError("dimensions", "row bit count != n/2");
    for (int k = 0; k < n / 2; ++k) {
      int first = base.sigma[i][2 * k];
      int second = base.sigma[i][2 * k + 1];
      m.at(i, first) = xi.xi[i][k];
      m.at(i, second) = 1 - xi.xi[i][k];
    }
  }
  m.check_invariants();
  return m;
}

IntMatrix sample_q_via_base(int n, u64 seed) {
  return assemble_from_base(sample_base(n, seed), sample_bit_choices(n, seed));
}

std::string base_to_text(const Base& base) {
  std::ostringstream out;
  for (int i = 0; i < base.n; ++i) {
    for (int j = 0; j < base.n; ++j) {
      if (j) out << ' ';
      out << base.sigma[i][j];
    }
    out << '\n';
  }
  return out.str();
}

Base base_from_text(const std::string& text) {
  Base b;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::vector<int> perm;
    int x;
    while (row >> x) perm.push_back(x);
    b.sigma.push_back(std::move(perm));
  }
  if (b.sigma.empty())
    throw PreconditionError("base text", "no permutation lines found");
  b.n = static_cast<int>(b.sigma[0].size());
  b.check_invariants();
  return b;
}

int union_components(const Matching& m1, const Matching& m2) {
  const int n = static_cast<int>(m1.size());
  auto check = [n](const Matching& m, const char* who) {
    if (static_cast<int>(m.size()) != n)
      throw PreconditionError("matching size", who);
    for (int v = 0; v < n; ++v) {
      int w = m[v];
      if (w < 0 || w >= n || w == v || m[w] != v)
        throw PreconditionError("perfect matching",
                                std::string(who) + " is not an involution");
    }
  };
  check(m1, "m1");
  check(m2, "m2");

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  int components = n;
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  };
  for (int v = 0; v < n; ++v) {
    unite(v, m1[v]);
    unite(v, m2[v]);
  }
  return components;
}

int cross_edges(const Matching& m, const std::vector<int>& a,
                const std::vector<int>& b) {
  const int n = static_cast<int>(m.size());
  std::vector<char> in_a(n, 0), in_b(n, 0);
  for (int v : a) {
    if (v < 0 || v >= n) throw PreconditionError("index range", "A");
    in_a[v] = 1;
  }
  for (int v : b) {
    if (v < 0 || v >= n) throw PreconditionError("index range", "B");
    if (in_a[v])
      throw PreconditionError("A,B disjoint",
                              "index " + std::to_string(v) + " in both");
    in_b[v] = 1;
  }
  int count = 0;
  for (int v = 0; v < n; ++v) {
    int w = m[v];
    if (v < w && ((in_a[v] && in_b[w]) || (in_a[w] && in_b[v]))) ++count;
  }
  return count;
}

namespace {

// Rows with < |A||B|/(8n) edges between A and B, compared in exact
// integers (8n * edges < |A||B|).
int sparse_rows_for(const std::vector<Matching>& matchings, int n,
                    const std::vector<int>& a, const std::vector<int>& b) {
  int sparse = 0;
  const i64 rhs = static_cast<i64>(a.size()) * static_cast<i64>(b.size());
  for (const auto& m : matchings) {
    i64 lhs = 8LL * n * cross_edges(m, a, b);
    if (lhs < rhs) ++sparse;
  }
  return sparse;
}

// Enumerate size-k subsets of pool, calling body(subset).
template <class Body>
void each_subset(const std::vector<int>& pool, int k, std::vector<int>& cur,
                 size_t start, Body&& body) {
  if (static_cast<int>(cur.size()) == k) {
    body(cur);
    return;
  }
  int need = k - static_cast<int>(cur.size());
  for (size_t i = start; i + need <= pool.size(); ++i) {
    cur.push_back(pool[i]);
    each_subset(pool, k, cur, i + 1, body);
    cur.pop_back();
  }
}

}  // namespace

BaseAudit audit_base(const Base& base, const ExponentProfile& profile,
                     u64 seed, i64 q2_samples, i64 q2_exhaustive_cap) {
  base.check_invariants();
  const int n = base.n;
  std::vector<Matching> matchings(n);
  for (int i = 0; i < n; ++i) matchings[i] = base.matching_of_row(i);

  BaseAudit audit;
  audit.q1_threshold = static_cast<int>(ceil_pow(n, profile.component_bound));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int c = union_components(matchings[i], matchings[j]);
      if (c > audit.q1_worst) {
        audit.q1_worst = c;
        audit.q1_worst_pair = {i, j};
      }
    }
  audit.q1_pass = audit.q1_worst <= audit.q1_threshold;

  audit.q2_row_threshold = std::sqrt(static_cast<double>(n)) / 2.0;
  const int smin = static_cast<int>(ceil_pow(n, profile.q2_set_min));
  const int smax = n / 2;
  if (smin > smax) {
    audit.q2_pass = true;
    audit.q2_method = "vacuous (no qualifying set sizes)";
    return audit;
  }

  // Count qualifying (A, B) pairs to decide exhaustive vs sampled.
  Int total_pairs = 0;
  for (int sa = smin; sa <= smax; ++sa)
    for (int sb = smin; sb <= smax; ++sb)
      total_pairs += binomial(n, sa) * binomial(n - sa, sb);

  auto record = [&](const std::vector<int>& a, const std::vector<int>& b) {
    int sparse = sparse_rows_for(matchings, n, a, b);
    if (sparse > audit.q2_worst_sparse_rows) audit.q2_worst_sparse_rows = sparse;
    ++audit.q2_pairs_checked;
  };

  if (total_pairs <= q2_exhaustive_cap) {
    audit.q2_exhaustive = true;
    audit.q2_method = "exhaustive over all qualifying (A,B)";
    std::vector<int> everyone(n);
    std::iota(everyone.begin(), everyone.end(), 0);
    for (int sa = smin; sa <= smax; ++sa) {
      std::vector<int> a_cur;
      each_subset(everyone, sa, a_cur, 0, [&](const std::vector<int>& a) {
        std::vector<int> rest;
        std::vector<char> in_a(n, 0);
        for (int v : a) in_a[v] = 1;
        for (int v = 0; v < n; ++v)
          if (!in_a[v]) rest.push_back(v);
        for (int sb = smin; sb <= smax; ++sb) {
          std::vector<int> b_cur;
          each_subset(rest, sb, b_cur, 0,
                      [&](const std::vector<int>& b) { record(a, b); });
        }
      });
    }
  } else {
    audit.q2_exhaustive = false;
    audit.q2_method =
        "sampled: sizes uniform in range, then uniform disjoint subsets";
    CounterRng rng(seed, /*stream=*/7);
    for (i64 s = 0; s < q2_samples; ++s) {
      CounterRng draw = rng.substream(static_cast<u64>(s));
      int sa = smin + static_cast<int>(draw.bounded(smax - smin + 1));
      int sb = smin + static_cast<int>(draw.bounded(smax - smin + 1));
      std::vector<int> a = random_prefix(n, sa, draw);
      std::vector<char> in_a(n, 0);
      for (int v : a) in_a[v] = 1;
      std::vector<int> rest;
      for (int v = 0; v < n; ++v)
        if (!in_a[v]) rest.push_back(v);
      // Uniform size-sb subset of the complement via partial shuffle.
      for (int i = 0; i < sb; ++i) {
        int j = i + static_cast<int>(
                        draw.bounded(static_cast<u64>(rest.size() - i)));
        std::swap(rest[i], rest[j]);
      }
      rest.resize(sb);
      record(a, rest);
    }
  }
  audit.q2_pass = audit.q2_worst_sparse_rows <= audit.q2_row_threshold;
  return audit;
}

std::vector<i64> difference_vector(const std::vector<i64>& v, const Base& base,
                                   int row) {
  if (static_cast<int>(v.size()) != base.n)
    throw PreconditionError("dimensions", "|v| != n");
  if (row < 0 || row >= base.n)
    throw PreconditionError("row index", std::to_string(row));
  const auto& s = base.sigma[row];
  std::vector<i64> diff(base.n / 2);
  for (int k = 0; k < base.n / 2; ++k)
    diff[k] = v[s[2 * k]] - v[s[2 * k + 1]];
  return diff;
}

LevelSetStats level_set_stats(const std::vector<i64>& v) {
  LevelSetStats stats;
  std::vector<i64> sorted(v);
  std::sort(sorted.begin(), sorted.end());
  i64 run = 0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    run = (i > 0 && sorted[i] == sorted[i - 1]) ? run + 1 : 1;
    stats.max_level = std::max(stats.max_level, run);
    if (sorted[i] != 0) ++stats.support;
  }
  return stats;
}

bool has_small_level_sets(const std::vector<i64>& v,
                          const ExponentProfile& profile) {
  const i64 n = static_cast<i64>(v.size());
  return n - level_set_stats(v).max_level >= ceil_pow(n, profile.level_set);
}

}  // namespace lsv
