#include <doctest.h>

#include <cmath>
#include <set>

#include "lsv/errors.hpp"
#include "lsv/exact.hpp"
#include "lsv/exponents.hpp"
#include "lsv/rng.hpp"

using namespace lsv;

TEST_CASE("counter rng is a pure function of key and counter") {
  CounterRng a(42, 3), b(42, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CounterRng c(42, 4);
  CHECK(CounterRng(42, 3).next_u64() != c.next_u64());
}

TEST_CASE("substreams decorrelate and never collide on keys") {
  CounterRng root(7, 0);
  std::set<u64> keys;
  for (u64 i = 0; i < 200; ++i) keys.insert(root.substream(i).key());
  CHECK(keys.size() == 200);
}

TEST_CASE("bounded draws stay in range and hit every residue") {
  CounterRng rng(5, 1);
  std::set<u64> seen;
  for (int i = 0; i < 2000; ++i) {
    const u64 x = rng.bounded(7);
    CHECK(x < 7);
    seen.insert(x);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("doubles land in [0,1) and rademacher in {-1,1}") {
  CounterRng rng(9, 2);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    const int r = rng.rademacher();
    CHECK((r == 1 || r == -1));
  }
}

TEST_CASE("gaussian pairs have sane first moments") {
  CounterRng rng(11, 2);
  double sum = 0, sumsq = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; i += 2) {
    const auto [x, y] = rng.gaussian_pair();
    sum += x + y;
    sumsq += x * x + y * y;
  }
  CHECK(std::abs(sum / trials) < 0.05);
  CHECK(std::abs(sumsq / trials - 1.0) < 0.05);
}

TEST_CASE("integer helpers") {
  CHECK(int_pow(Int(2), 10) == 1024);
  CHECK(int_pow(Int(-3), 3) == -27);
  CHECK(binomial(14, 7) == 3432);
  CHECK(binomial(4, 2) == 6);
  CHECK(is_prime(2));
  CHECK(is_prime(2503));
  CHECK_FALSE(is_prime(2501));
  CHECK(least_prime_at_least(2500) == 2503);
  CHECK(rat_string(Rat(-3, 6)) == "-1/2");
}

TEST_CASE("exponent profiles resolve by name") {
  CHECK(ExponentProfile::by_name("paper").name == "paper");
  CHECK(ExponentProfile::by_name("desk").name == "desk");
  CHECK_THROWS_AS(ExponentProfile::by_name("nope"), PreconditionError);
  CHECK(ExponentProfile::paper().lcd_threshold_exp ==
        doctest::Approx(0.75));
}

TEST_CASE("ceil_pow rounds n^e up") {
  CHECK(ceil_pow(12, 0.6) == 5);
  CHECK(ceil_pow(4, 0.75) == 3);
  CHECK(ceil_pow(16, 0.5) == 4);
  CHECK(ceil_pow(1, 0.99) == 1);
}
