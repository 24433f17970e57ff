#include <doctest.h>

#include <cmath>

#include "lsv/anticonc.hpp"
#include "lsv/errors.hpp"

using namespace lsv;

TEST_CASE("signed sum distribution of (1,1)") {
  const DistTable t = signed_sum_distribution({1, 1}, ProbMode::Exact);
  t.check_invariants();
  REQUIRE(t.size() == 3);
  CHECK(t.values == std::vector<i64>({-2, 0, 2}));
  CHECK(t.p_exact[0] == Rat(1, 4));
  CHECK(t.p_exact[1] == Rat(1, 2));
  CHECK(t.p_exact[2] == Rat(1, 4));
}

TEST_CASE("atom probability pinned examples") {
  const Atom a = atom_probability({1, 1});
  CHECK(a.value == 0);
  CHECK(a.prob == Rat(1, 2));
  const Atom b = atom_probability({1, 2, 3});
  CHECK(b.value == 0);
  CHECK(b.prob == Rat(1, 4));
  const Atom c = atom_probability({0, 0, 5});
  CHECK(c.prob == Rat(1, 2));
}

TEST_CASE("mod-p law row sums to one and matches direct counting") {
  const ModAtom m = atom_probability_mod_p({1, 2, 2}, 5);
  Rat total = 0;
  for (const Rat& q : m.dist) total += q;
  CHECK(total == Rat(1));
  // sums of +-1 +-2 +-2: 5,1,1,-3,3,-1,-1,-5 -> residues 0,1,1,2,3,4,4,0
  CHECK(m.dist[0] == Rat(2, 8));
  CHECK(m.dist[1] == Rat(2, 8));
  CHECK(m.dist[2] == Rat(1, 8));
  CHECK(m.dist[3] == Rat(1, 8));
  CHECK(m.dist[4] == Rat(2, 8));
  CHECK(m.prob == Rat(1, 4));
}

TEST_CASE("slice distribution of the all-ones vector is a point mass") {
  const DistTable t = slice_sum_distribution({1, 1, 1, 1}, ProbMode::Exact);
  REQUIRE(t.size() == 1);
  CHECK(t.values[0] == 4);
  CHECK(t.p_exact[0] == Rat(1));
}

TEST_CASE("slice distribution of e1 splits evenly") {
  const DistTable t = slice_sum_distribution({1, 0, 0, 0}, ProbMode::Exact);
  REQUIRE(t.size() == 2);
  CHECK(t.values == std::vector<i64>({0, 2}));
  CHECK(t.p_exact[0] == Rat(1, 2));
  CHECK(t.p_exact[1] == Rat(1, 2));
}

TEST_CASE("levy concentration widens with delta") {
  const DistTable t = signed_sum_distribution({1, 3, 5, 7}, ProbMode::Exact);
  const LevyEstimate tight = levy_concentration(t, 0.0);
  const LevyEstimate mid = levy_concentration(t, 8.0);
  const LevyEstimate loose = levy_concentration(t, 16.0);
  CHECK(tight.value <= mid.value);
  // the best length-16 window is [-8, 8]: 10 of the 16 signed sums
  CHECK(mid.value == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(loose.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tight.exact);
}

TEST_CASE("monte carlo levy stays near the exact value") {
  const std::vector<i64> w{2, -3, 1, 4, -1, 2, 5, -2};
  const DistTable t = signed_sum_distribution(w, ProbMode::Exact);
  const LevyEstimate exact = levy_concentration(t, 1.5);
  std::vector<double> samples;
  CounterRng rng(123, 50);
  for (int i = 0; i < 20000; ++i) {
    double s = 0;
    for (i64 x : w) s += static_cast<double>(rng.rademacher() * x);
    samples.push_back(s);
  }
  const LevyEstimate mc = levy_concentration_mc(samples, 1.5);
  CHECK_FALSE(mc.exact);
  CHECK(std::abs(mc.value - exact.value) <= 4 * mc.se + 1e-9);
}

TEST_CASE("enumeration helpers enforce their budgets") {
  CHECK_THROWS_AS(enumerate_signed_sums(std::vector<double>(30, 1.0)),
                  BudgetError);
  CHECK(enumerate_signed_sums({1.0, 2.0}).size() == 4);
  CHECK(enumerate_slice_sums({1.0, 2.0}).size() == 2);
}

TEST_CASE("csv export carries one row per support point") {
  const DistTable t = signed_sum_distribution({1, 2}, ProbMode::Exact);
  const std::string csv = t.to_csv();
  CHECK(csv.find("value,probability") == 0);
  size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  CHECK(rows == t.size() + 1);
}
