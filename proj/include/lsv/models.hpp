#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "lsv/exponents.hpp"
#include "lsv/matrix.hpp"
#include "lsv/rng.hpp"

namespace lsv {

// A perfect matching of [0, n), stored as the partner map:
// partner[v] = w iff {v, w} is an edge. Involution with no fixed
// points.
using Matching = std::vector<int>;

// The base of the two-step model: n permutations of [0, n), one
// per row, in one-line notation. Row i's matching pairs positions
// sigma[i][2k] and sigma[i][2k+1].
struct Base {
  int n = 0;
  std::vector<std::vector<int>> sigma;

  Matching matching_of_row(int i) const;
  void check_invariants() const;
};

// One bit per matched pair per row: xi[i][k] picks which endpoint of
// row i's k-th pair receives the 1.
struct BitChoices {
  int n = 0;
  std::vector<std::vector<std::uint8_t>> xi;  // n rows of n/2 bits
};

IntMatrix sample_rademacher(int n, u64 seed);
IntMatrix sample_row_regular(int n, u64 seed);
Eigen::MatrixXd sample_gaussian(int n, u64 seed);
Base sample_base(int n, u64 seed);
BitChoices sample_bit_choices(int n, u64 seed);
IntMatrix assemble_from_base(const Base& base, const BitChoices& xi);
IntMatrix sample_q_via_base(int n, u64 seed);

// Base serialization: n lines, each a permutation of 0..n-1 in
// one-line notation (n is recovered from the line length).
std::string base_to_text(const Base& base);
Base base_from_text(const std::string& text);

// Connected components of the union multigraph of two perfect
// matchings; a doubled edge is one component of size 2.
int union_components(const Matching& m1, const Matching& m2);

// Matching edges with one endpoint in a and one in b; a and b must be
// disjoint index sets.
int cross_edges(const Matching& m, const std::vector<int>& a,
                const std::vector<int>& b);

struct BaseAudit {
  bool q1_pass = true;
  int q1_threshold = 0;        // ceil(n^component_bound)
  int q1_worst = 0;            // max components over row pairs
  std::pair<int, int> q1_worst_pair{-1, -1};

  bool q2_pass = true;
  double q2_row_threshold = 0;  // sqrt(n)/2, max allowed sparse rows
  i64 q2_pairs_checked = 0;
  bool q2_exhaustive = false;   // else seeded uniform (A,B) sample
  int q2_worst_sparse_rows = 0;
  std::string q2_method;

  bool pass() const { return q1_pass && q2_pass; }
};

// Q1: every pair of row matchings unions into at most
// ceil(n^component_bound) components, checked exactly over all pairs.
// Q2: for disjoint A, B with ceil(n^q2_set_min) <= |A|,|B| <= n/2, at
// most sqrt(n)/2 rows have fewer than |A||B|/(8n) cross edges;
// checked exactly when the number of qualifying (A,B) pairs is at
// most q2_exhaustive_cap, otherwise over q2_samples seeded pairs
// (sizes uniform in range, then uniform subsets), method recorded.
BaseAudit audit_base(const Base& base, const ExponentProfile& profile,
                     u64 seed, i64 q2_samples = 200,
                     i64 q2_exhaustive_cap = 20000);

// v_sigma_i: the length-n/2 vector of differences of v across row
// i's matched pairs, k-th coordinate v[sigma(2k)] - v[sigma(2k+1)].
std::vector<i64> difference_vector(const std::vector<i64>& v, const Base& base,
                                   int row);

struct LevelSetStats {
  i64 max_level = 0;  // multiplicity of the most repeated value
  i64 support = 0;    // count of nonzero entries
};

LevelSetStats level_set_stats(const std::vector<i64>& v);

// The "many levels" predicate: n - L(v) >= ceil(n^level_set), the
// ceiling-rounded reading of L(v) < n - n^level_set.
bool has_small_level_sets(const std::vector<i64>& v,
                          const ExponentProfile& profile);

}  // namespace lsv
