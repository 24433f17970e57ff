#include <doctest.h>

#include <numeric>

#include "lsv/errors.hpp"
#include "lsv/models.hpp"

using namespace lsv;

TEST_CASE("rademacher entries are all plus or minus one") {
  const IntMatrix m = sample_rademacher(10, 3);
  m.check_invariants();
  for (i64 e : m.entries) CHECK((e == 1 || e == -1));
}

TEST_CASE("row regular rows carry exactly n/2 ones") {
  const IntMatrix q = sample_row_regular(12, 4);
  q.check_invariants();
  for (int i = 0; i < q.n; ++i) {
    i64 ones = 0;
    for (int j = 0; j < q.n; ++j) {
      CHECK((q.at(i, j) == 0 || q.at(i, j) == 1));
      ones += q.at(i, j);
    }
    CHECK(ones == 6);
  }
}

TEST_CASE("odd dimensions are rejected where a matching is needed") {
  CHECK_THROWS_AS(sample_row_regular(5, 1), PreconditionError);
  CHECK_THROWS_AS(sample_base(7, 1), PreconditionError);
}

TEST_CASE("base rows are permutations and assembly respects the pairing") {
  const Base b = sample_base(8, 9);
  b.check_invariants();
  const BitChoices xi = sample_bit_choices(8, 10);
  const IntMatrix q = assemble_from_base(b, xi);
  q.check_invariants();
  for (int i = 0; i < 8; ++i) {
    for (int k = 0; k < 4; ++k) {
      const int lo = b.sigma[i][2 * k], hi = b.sigma[i][2 * k + 1];
      CHECK(q.at(i, lo) + q.at(i, hi) == 1);
    }
  }
}

TEST_CASE("matching of a row is a fixed-point-free involution") {
  const Base b = sample_base(10, 21);
  for (int i = 0; i < 10; ++i) {
    const Matching m = b.matching_of_row(i);
    for (int v = 0; v < 10; ++v) {
      CHECK(m[v] != v);
      CHECK(m[m[v]] == v);
    }
  }
}

TEST_CASE("union components of hand matchings") {
  const Matching pairs{1, 0, 3, 2};    // (0,1)(2,3)
  const Matching crossed{2, 3, 0, 1};  // (0,2)(1,3)
  CHECK(union_components(pairs, pairs) == 2);
  CHECK(union_components(pairs, crossed) == 1);
  CHECK(cross_edges(pairs, {0}, {1}) == 1);
  CHECK(cross_edges(pairs, {0}, {2}) == 0);
  CHECK(cross_edges(crossed, {0, 1}, {2, 3}) == 2);
}

TEST_CASE("difference vector follows the row pairing") {
  Base ident;
  ident.n = 4;
  ident.sigma.assign(4, {0, 1, 2, 3});
  CHECK(difference_vector({5, 1, 7, 2}, ident, 0) ==
        std::vector<i64>({4, 5}));
  Base swapped = ident;
  swapped.sigma[1] = {1, 0, 3, 2};
  CHECK(difference_vector({5, 1, 7, 2}, swapped, 1) ==
        std::vector<i64>({-4, -5}));
}

TEST_CASE("level set stats and the many-levels predicate") {
  const LevelSetStats s = level_set_stats({3, 3, 0, 1, 3, 0});
  CHECK(s.max_level == 3);
  CHECK(s.support == 4);
  const ExponentProfile desk = ExponentProfile::desk();
  std::vector<i64> distinct(16);
  std::iota(distinct.begin(), distinct.end(), 1);
  CHECK(has_small_level_sets(distinct, desk));
  CHECK_FALSE(has_small_level_sets(std::vector<i64>(16, 2), desk));
}

TEST_CASE("serialization round trips and rejects junk") {
  const Base b = sample_base(6, 33);
  CHECK(base_from_text(base_to_text(b)).sigma == b.sigma);
  CHECK_THROWS_AS(base_from_text("0 1\n0 2\n"), PreconditionError);
  const IntMatrix m = sample_rademacher(5, 2);
  const IntMatrix back = matrix_from_text(matrix_to_text(m));
  CHECK(back.entries == m.entries);
  CHECK_THROWS_AS(matrix_from_text("1 2\n3\n"), PreconditionError);
}

TEST_CASE("samplers are pure functions of the seed") {
  CHECK(sample_rademacher(9, 77).entries == sample_rademacher(9, 77).entries);
  CHECK(sample_row_regular(8, 78).entries ==
        sample_row_regular(8, 78).entries);
  CHECK(sample_q_via_base(8, 79).entries == sample_q_via_base(8, 79).entries);
  CHECK(sample_rademacher(9, 77).entries != sample_rademacher(9, 78).entries);
}
