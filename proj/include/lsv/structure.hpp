#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsv/exact.hpp"
#include "lsv/exponents.hpp"
#include "lsv/models.hpp"
#include "lsv/parallel.hpp"

namespace lsv {

// ---------- LCD machinery ----------

struct LcdParams {
  double gamma = 0.1;        // lattice-closeness fraction, in (0,1)
  double alpha = 1.0;        // absolute closeness cap, > 0
  double theta_max = 100.0;
  // 0 picks the default 1e-3 / max|a_i|. Guidance: keep below
  // 1/(2 max|a_i|), the spacing at which theta*a_i crosses
  // half-integers.
  double grid_resolution = 0;
  int refine_iters = 200;          // bisection steps per bracket
  i64 max_grid_points = 50'000'000;
};

enum class LcdStatus { Found, ExceedsThetaMax };

struct LcdResult {
  LcdStatus status = LcdStatus::ExceedsThetaMax;
  double theta = 0;   // least certified admissible theta
  double dist = 0;    // dist(theta a, Z^n) there
  double margin = 0;  // min(gamma theta ||a||, alpha) - dist, > 0 when Found
  std::vector<i64> witness;  // nearest lattice point at theta
  LcdParams params;
};

// Scans theta over (0, theta_max] for the least theta with
// dist(theta a, Z^n) < min(gamma ||theta a||, alpha) strictly. Grid
// scan plus local-minimum refinement of the margin function; any
// Found theta is re-verified against the strict inequality before
// being returned. The admissible set is open, so the true infimum is
// approached from above: Found theta sits within one grid step of it.
// ExceedsThetaMax only says the scan found nothing; it certifies
// nothing about the true LCD.
LcdResult lcd_estimate(const std::vector<double>& a, const LcdParams& params,
                       ExecPolicy policy = ExecPolicy::OpenMP);

enum class GammaClass { Gamma1, Gamma2, Undetermined };

struct GammaReport {
  GammaClass cls = GammaClass::Undetermined;
  double threshold = 0;  // n^lcd_threshold_exp / eta
  bool fine_grid = false;
  LcdResult lcd;
};

// Gamma2: admissible theta certified below the threshold. Gamma1: a
// fine-grid scan (default resolution or better) up to the threshold
// found nothing. Undetermined: the scan was too coarse or over
// budget. Three-valued on purpose; nothing here proves a large LCD.
GammaReport classify_gamma(const std::vector<double>& a, double eta,
                           const LcdParams& params,
                           const ExponentProfile& profile,
                           ExecPolicy policy = ExecPolicy::OpenMP);

// ---------- R_k^* counting ----------

// Count of (ordered 2k-tuple of indices, sign pattern) solutions to
// +-a_{i1} +- ... +- a_{i2k} = 0 mod p whose tuple uses strictly more
// than 1.01k distinct indices (compared exactly: 100*distinct > 101*k).

Int r_k_star_bruteforce(const std::vector<i64>& a, int k, i64 p,
                        i64 max_ops = 2'000'000'000,
                        ExecPolicy policy = ExecPolicy::Serial);

// Inclusion-exclusion over index-coincidence patterns (set partitions
// of the 2k positions), each evaluated by residue convolution. Agrees
// with brute force by construction of the tests, not by sharing code.
Int r_k_star_partition_dp(const std::vector<i64>& a, int k, i64 p,
                          i64 max_ops = 2'000'000'000);

struct RkStarResult {
  Int count;
  std::string engine;  // "closed-form" (k=1) | "brute" | "partition-dp"
};

// Dispatcher: k=1 closed form over residue counts, otherwise brute
// force when cheap, else the partition DP.
RkStarResult r_k_star(const std::vector<i64>& a, int k, i64 p,
                      i64 max_ops = 2'000'000'000);

Int r_k_star_trivial_bound(i64 len, int k);  // 2^{2k} len^{2k}

// ---------- Halasz bound ----------

struct HalaszParams {
  i64 p = 3;       // odd prime
  int k = 1;
  double M = 1.0;
  double C = 1.0;  // calibration constant, never a paper value
};

// The anti-concentration upper bound over F_p: pure arithmetic in the
// inputs, no probability computed here.
double halasz_rhs(i64 n, int k, double M, i64 p, double r_star, double C);

struct HalaszEvaluation {
  double bound = 0;
  Int r_star = 0;
  std::string engine;
  i64 support = 0;  // nonzero residues of a mod p
};

// Checks the theorem's named preconditions (30M <= |supp(a)|,
// 80kM <= n, 0 <= k <= n/2, p odd prime), computes R_k^*, then
// evaluates halasz_rhs.
HalaszEvaluation halasz_bound(const std::vector<i64>& a,
                              const HalaszParams& params,
                              i64 max_ops = 2'000'000'000);

// ---------- B-set membership and counting bound ----------

enum class BSetStatus { Member, NonMember, Undetermined };

struct BSetResult {
  BSetStatus status = BSetStatus::Undetermined;
  std::vector<int> witness;  // violating subvector's coordinate indices
  Int witness_r_star = 0;
  Rat witness_threshold = 0;  // t 2^{2k} |b|^{2k} / p
  i64 subvectors_checked = 0;
  bool exhaustive = false;
};

// Membership in the structured set: every subvector b with
// |supp(b)| >= s2 must satisfy R_k^*(b) >= t 2^{2k} |b|^{2k} / p
// (compared in exact rationals). Exhaustive over all subvectors for
// |a| <= max_exhaustive_len; otherwise a seeded randomized search for
// a violating witness, answering Undetermined when none is found
// (randomized mode can never certify Member).
BSetResult b_set_membership(const std::vector<i64>& a, int k, i64 s1, i64 s2,
                            const Rat& t, i64 p, u64 seed,
                            int max_exhaustive_len = 20,
                            i64 random_probes = 2000,
                            i64 max_ops = 2'000'000'000);

// log of 200^n (s2/s1)^{2k-1} p^n t^{-n+s2}, natural log.
double counting_bound_log(i64 n, int k, i64 s1, i64 s2, i64 p, const Rat& t);

// ---------- T_v and witnessing pairs ----------

// Default row-support threshold ceil(n^level_set / 16); desk-scale
// callers may pass their own threshold to compute_T_v directly.
i64 t_v_support_threshold(i64 n, const ExponentProfile& profile);

// Rows whose difference vector has support >= threshold.
std::vector<int> compute_T_v(const std::vector<i64>& v, const Base& base,
                             i64 threshold);

struct RowScore {
  int row = -1;
  bool finite = false;  // false: no qualifying subvector (treated as +inf)
  Rat score = 0;        // min over subvectors of R_k^*(b) / |b|^{2k}
};

struct WitnessReport {
  std::vector<int> t_v;
  std::vector<RowScore> scores;  // one per row of t_v, in t_v order
  bool found = false;
  int i1 = -1, i2 = -1;
};

// The two rows of T_v with the largest min-over-subvectors normalized
// R_k^* score; ties resolved to the lexicographically first pair.
// Scores are exact rationals; "no qualifying subvector" sorts above
// every finite score.
WitnessReport witnessing_pair(const std::vector<i64>& v, const Base& base,
                              int k, i64 p, i64 s2, i64 t_v_threshold,
                              int max_subvector_len = 20,
                              i64 max_ops = 2'000'000'000);

}  // namespace lsv
