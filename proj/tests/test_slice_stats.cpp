#include <doctest.h>

#include <cmath>

#include "lsv/errors.hpp"
#include "lsv/slice_stats.hpp"

using namespace lsv;

TEST_CASE("slice second moment pinned values") {
  CHECK(slice_second_moment(std::vector<double>(6, 1.0)) ==
        doctest::Approx(36.0).epsilon(1e-12));
  CHECK(slice_second_moment({1.0, 0.0, 0.0, 0.0, 0.0}) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(slice_second_moment_rat(
            {Rat(1, 2), Rat(1, 2), Rat(-1, 2), Rat(-1, 2)}) == Rat(4, 3));
  CHECK_THROWS_AS(slice_second_moment({1.0}), PreconditionError);
}

TEST_CASE("iid second moment pinned values") {
  CHECK(iid_second_moment(std::vector<double>(4, 1.0)) ==
        doctest::Approx(20.0).epsilon(1e-12));
  CHECK(iid_second_moment_rat({Rat(1), Rat(-1)}) == Rat(2));
}

TEST_CASE("q row norm expectation is n over 4 times the slice moment") {
  const std::vector<Rat> v{Rat(3), Rat(-1), Rat(4), Rat(1)};
  CHECK(q_row_norm_expectation_rat(v) == Rat(4) * slice_second_moment_rat(v) / 4);
  CHECK_THROWS_AS(q_row_norm_expectation(std::vector<double>(3, 1.0)),
                  PreconditionError);
}

TEST_CASE("exact slice moments from the table") {
  std::vector<i64> e1{1, 0, 0, 0, 0, 0};
  CHECK(slice_moment_exact(e1, 1) == Rat(2));
  CHECK(slice_moment_exact(e1, 2) == Rat(8));
  // X in {0, 2} evenly: E[X^(2q)] = 2^(2q)/2
  CHECK(slice_moment_exact(e1, 5) == Rat(512));
}

TEST_CASE("moment norm bound pinned example") {
  CHECK(moment_norm_bound(2, 100, 1.0) ==
        doctest::Approx(316.2277660168379).epsilon(1e-12));
}

TEST_CASE("mgf bound pinned example and guard rails") {
  CHECK(mgf_bound(1e-3, 1.0, 3, 100, 1.0) ==
        doctest::Approx(1.016001).epsilon(1e-9));
  CHECK_THROWS_AS(mgf_bound(0.5, 1.0, 3, 100, 1.0), PreconditionError);
  CHECK_THROWS_AS(mgf_bound(1e-3, 1.0, 2, 100, 1.0), PreconditionError);
}

TEST_CASE("exact mgf of a point-mass slice variable is one") {
  // all-ones v: X = n exactly, so Z = E[X^2] - X^2 = 0 and E[e^(lambda Z)] = 1
  const std::vector<i64> ones(8, 1);
  CHECK(slice_mgf_from_table(ones, 1e-4) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("monte carlo moment agrees with the exact path") {
  const std::vector<i64> v{2, -1, 3, 1, -2, 1, 4, -3};
  const MomentCheck exact = slice_moment_empirical(v, 2, MomentMode::Exact);
  const MomentCheck mc =
      slice_moment_empirical(v, 2, MomentMode::MonteCarlo, 9, 60000);
  CHECK(exact.trials == 0);
  CHECK(mc.trials == 60000);
  CHECK(std::abs(exact.value - mc.value) <= 3 * mc.se);
  CHECK(exact.within);
}

TEST_CASE("fixed vector invertibility check reports its threshold") {
  std::vector<double> v(16, 0.25);
  const InvertibilityCheck c =
      fixed_vector_invertibility_check(v, 50, 4, FixedVectorModel::QRowRegular);
  CHECK(c.trials == 50);
  CHECK(c.threshold == doctest::Approx(0.5 * std::sqrt(16.0 * 1.0)));
  CHECK(c.hits == 0);  // Q has row sums n/2, far from zero on constants
}
