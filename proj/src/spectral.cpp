#include "lsv/spectral.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "lsv/errors.hpp"

namespace lsv {

namespace {

void require_square(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw PreconditionError("square matrix",
                            "got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
}

}  // namespace

SpectralSummary smallest_singular_value(const Eigen::MatrixXd& m, double tol) {
  require_square(m);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  SpectralSummary out;
  out.s_max = sv(0);
  out.s_min = sv(sv.size() - 1);
  const Eigen::VectorXd v = svd.matrixV().col(sv.size() - 1);
  const Eigen::VectorXd u = svd.matrixU().col(sv.size() - 1);
  out.residual = (m * v - out.s_min * u).norm();
  out.converged = out.residual <= tol * std::max(out.s_max, 1.0);
  return out;
}

double operator_norm(const Eigen::MatrixXd& m) {
  require_square(m);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

double restricted_norm_H(const Eigen::MatrixXd& m) {
  require_square(m);
  const auto n = m.rows();
  if (n == 1) return 0.0;
  // Helmert-style basis of H: column k is (1,...,1,-(k+1),0,...,0)
  // normalized, with k+1 leading ones. Orthonormal by construction
  // and every column sums to zero.
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, n - 1);
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    const double scale =
        1.0 / std::sqrt(static_cast<double>((k + 1)) * (k + 2));
    for (Eigen::Index i = 0; i <= k; ++i) basis(i, k) = scale;
    basis(k + 1, k) = -static_cast<double>(k + 1) * scale;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m * basis);
  return svd.singularValues()(0);
}

Int exact_determinant(const IntMatrix& m) {
  const int n = m.n;
  if (n < 1 || m.entries.size() != static_cast<size_t>(n) * n)
    throw PreconditionError("square matrix", "exact_determinant");
  std::vector<Int> a(m.entries.begin(), m.entries.end());
  auto at = [&a, n](int i, int j) -> Int& {
    return a[static_cast<size_t>(i) * n + j];
  };
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;  // whole column zero below: singular
      for (int j = k; j < n; ++j) std::swap(at(k, j), at(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        // Bareiss step: division by the previous pivot is exact.
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign > 0 ? at(n - 1, n - 1) : -at(n - 1, n - 1);
}

bool exact_singularity(const IntMatrix& m) { return exact_determinant(m) == 0; }

}  // namespace lsv
