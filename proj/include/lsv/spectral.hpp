#pragma once

#include <Eigen/Core>

#include "lsv/exact.hpp"
#include "lsv/matrix.hpp"

namespace lsv {

struct SpectralSummary {
  double s_min = 0;
  double s_max = 0;
  double residual = 0;   // ||M v_min - s_min u_min||_2, the achieved defect
  bool converged = true; // residual <= tol * max(s_max, 1)
};

// Full SVD; s_min comes with its achieved residual so callers can see
// non-convergence instead of trusting a silent value.
SpectralSummary smallest_singular_value(const Eigen::MatrixXd& m,
                                        double tol = 1e-10);

double operator_norm(const Eigen::MatrixXd& m);

// Top singular value of M restricted to H = {v : sum v_i = 0},
// computed on an explicit (n-1)-column orthonormal basis of H (not
// via M * P_H, which would plant a spurious zero singular value).
// n = 1: H = {0}, returns 0.
double restricted_norm_H(const Eigen::MatrixXd& m);

// Exact integer determinant by fraction-free Bareiss elimination;
// intermediate values are minors, so cpp_int keeps everything exact.
Int exact_determinant(const IntMatrix& m);

// True iff det(M) = 0 in exact arithmetic. Never a float verdict.
bool exact_singularity(const IntMatrix& m);

}  // namespace lsv
