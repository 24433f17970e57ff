#include <doctest.h>

#include <cmath>

#include "lsv/errors.hpp"
#include "lsv/exact.hpp"
#include "lsv/models.hpp"
#include "lsv/spectral.hpp"

using namespace lsv;

TEST_CASE("diagonal matrix singular values are read off the diagonal") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d(0, 0) = 1;
  d(1, 1) = -2;
  d(2, 2) = 3;
  const SpectralSummary s = smallest_singular_value(d);
  CHECK(s.converged);
  CHECK(s.s_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.s_max == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(operator_norm(d) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("singular matrix reports s_min zero") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 2, 4;
  const SpectralSummary s = smallest_singular_value(m);
  CHECK(s.s_min == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(s.s_max == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("exact determinant on hand matrices") {
  IntMatrix m = IntMatrix::zero(2, ModelTag::External);
  m.entries = {1, 2, 3, 4};
  CHECK(exact_determinant(m) == -2);
  IntMatrix id3 = IntMatrix::zero(3, ModelTag::External);
  id3.entries = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  CHECK(exact_determinant(id3) == 1);
  IntMatrix sing = IntMatrix::zero(3, ModelTag::External);
  sing.entries = {1, 2, 3, 2, 4, 6, 1, 0, 1};
  CHECK(exact_determinant(sing) == 0);
  CHECK(exact_singularity(sing));
  CHECK_FALSE(exact_singularity(id3));
}

TEST_CASE("determinant magnitude survives where doubles would drift") {
  // upper triangular with huge diagonal: det is the diagonal product
  const int n = 6;
  IntMatrix m = IntMatrix::zero(n, ModelTag::External);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      m.entries[static_cast<size_t>(i * n + j)] = (i == j) ? 1000003 : 999999;
    }
  }
  CHECK(exact_determinant(m) == int_pow(Int(1000003), 6));
}

TEST_CASE("restricted norm is at most the operator norm") {
  const IntMatrix m = sample_rademacher(10, 5);
  const Eigen::MatrixXd r = m.to_real();
  CHECK(restricted_norm_H(r) <= operator_norm(r) + 1e-9);
  CHECK(restricted_norm_H(Eigen::MatrixXd::Identity(6, 6)) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("row regular operator norm window") {
  for (int n : {8, 16}) {
    const IntMatrix q = sample_row_regular(n, 11);
    const double top = operator_norm(q.to_real());
    CHECK(top >= n / 2.0 - 1e-9);
    CHECK(top <= n / 2.0 + 2.0 * std::sqrt(static_cast<double>(n)));
  }
}
