#include <doctest.h>

#include <cmath>

#include "lsv/errors.hpp"
#include "lsv/structure.hpp"

using namespace lsv;

TEST_CASE("lcd of a standard basis vector") {
  LcdParams params;
  params.gamma = 0.1;
  params.alpha = 1.0;
  params.theta_max = 5.0;
  const LcdResult r = lcd_estimate({1, 0, 0}, params);
  REQUIRE(r.status == LcdStatus::Found);
  CHECK(r.theta == doctest::Approx(1.0 / 1.1).epsilon(2e-3));
  CHECK(r.margin > 0);
  CHECK(r.witness[0] == 1);
}

TEST_CASE("lcd scan reports when the ceiling is hit") {
  LcdParams params;
  params.gamma = 0.1;
  params.alpha = 1.0;
  params.theta_max = 1.0;  // below the first admissible sqrt(2)/1.1
  const double inv = 1.0 / std::sqrt(2.0);
  const LcdResult r = lcd_estimate({inv, inv}, params);
  CHECK(r.status == LcdStatus::ExceedsThetaMax);
}

TEST_CASE("lcd requires a unit vector") {
  LcdParams params;
  CHECK_THROWS_AS(lcd_estimate({2, 0, 0}, params), PreconditionError);
}

TEST_CASE("r_k_star pinned examples and engine dispatch") {
  CHECK(r_k_star_bruteforce({1, 1}, 1, 5) == 4);
  CHECK(r_k_star_bruteforce({1, 2}, 1, 5) == 0);
  CHECK(r_k_star_bruteforce({1, 4}, 1, 5) == 4);
  CHECK(r_k_star_partition_dp({1, 1}, 1, 5) == 4);
  CHECK(r_k_star_partition_dp({1, 4}, 1, 5) == 4);
  const RkStarResult one = r_k_star({1, 1}, 1, 5);
  CHECK(one.count == 4);
  CHECK(one.engine == "closed-form");
  CHECK(r_k_star_trivial_bound(2, 1) == 16);
}

TEST_CASE("halasz rhs pinned example") {
  CHECK(halasz_rhs(160, 1, 2.0, 101, 0.0, 1.0) ==
        doctest::Approx(0.19173127).epsilon(3e-6));
}

TEST_CASE("halasz bound enforces its preconditions by name") {
  std::vector<i64> a(160, 1);
  CHECK_THROWS_AS(halasz_bound(a, HalaszParams{4, 1, 2.0, 1.0}),
                  PreconditionError);
  CHECK_THROWS_AS(halasz_bound(a, HalaszParams{101, 200, 2.0, 1.0}),
                  PreconditionError);
  const HalaszEvaluation ok = halasz_bound(a, HalaszParams{101, 1, 2.0, 1.0});
  CHECK(ok.support == 160);
  CHECK(ok.bound > 0);
}

TEST_CASE("b-set membership pinned examples") {
  const BSetResult non = b_set_membership({1, 1}, 1, 2, 2, Rat(5), 5, 1);
  CHECK(non.status == BSetStatus::NonMember);
  CHECK(non.exhaustive);
  const BSetResult mem = b_set_membership({1, 4}, 1, 2, 2, Rat(1), 5, 1);
  CHECK(mem.status == BSetStatus::Member);
  std::vector<i64> big(25, 1);
  const BSetResult rnd = b_set_membership(big, 1, 25, 25, Rat(1, 1000), 5, 1);
  CHECK_FALSE(rnd.exhaustive);
  CHECK(rnd.status != BSetStatus::Member);  // randomized mode cannot certify
}

TEST_CASE("counting bound pinned example") {
  CHECK(std::exp(counting_bound_log(4, 1, 2, 2, 5, Rat(2))) ==
        doctest::Approx(2.5e11).epsilon(1e-9));
  CHECK_THROWS_AS(counting_bound_log(4, 1, 5, 2, 5, Rat(2)),
                  PreconditionError);
}

TEST_CASE("t_v threshold scales like n^level_set over 16") {
  const ExponentProfile paper = ExponentProfile::paper();
  CHECK(t_v_support_threshold(16, paper) >= 1);
  CHECK(t_v_support_threshold(10000, paper) ==
        static_cast<i64>(std::ceil(std::pow(10000.0, paper.level_set) / 16 -
                                   1e-9)));
}
