#pragma once

#include <string>
#include <vector>

#include "lsv/exact.hpp"
#include "lsv/models.hpp"

namespace lsv {

enum class ProbMode { Exact, Double };

// Exact finite distribution of an integer-valued random sum: the
// common currency of the anti-concentration engines. Support sorted
// and distinct; probabilities exact rationals or doubles, chosen
// explicitly by the caller, never silently.
struct DistTable {
  ProbMode mode = ProbMode::Exact;
  std::vector<i64> values;
  std::vector<Rat> p_exact;     // parallel to values in Exact mode
  std::vector<double> p_dbl;    // parallel to values in Double mode

  size_t size() const { return values.size(); }
  double prob_dbl(size_t i) const;
  void check_invariants() const;  // sums to 1; exact mode exactly
  std::string to_csv() const;     // columns: value,probability
};

// Law of eps_1 w_1 + ... + eps_n w_n, eps i.i.d. Rademacher, by
// value-indexed convolution over the range sum|w_i|. Throws
// BudgetError when the table would exceed max_cells; the caller may
// fall back to Monte Carlo, this function never does.
DistTable signed_sum_distribution(const std::vector<i64>& w, ProbMode mode,
                                  i64 max_cells = 50'000'000);

struct Atom {
  i64 value = 0;  // argmax point (smallest such value on ties)
  Rat prob = 1;
};

// Largest atom of the signed sum, exact.
Atom atom_probability(const std::vector<i64>& w, i64 max_cells = 50'000'000);

struct ModAtom {
  i64 residue = 0;
  Rat prob = 1;
  std::vector<Rat> dist;  // full law over residues 0..p-1
};

// Largest atom of the signed sum over F_p, exact counts mod p.
ModAtom atom_probability_mod_p(const std::vector<i64>& a, i64 p);

// Law of X = v_1(1+x_1) + ... + v_n(1+x_n) with x uniform on the
// zero-sum slice of {-1,+1}^n; DP over (index, plus-ones used,
// partial sum), normalized by C(n, n/2).
DistTable slice_sum_distribution(const std::vector<i64>& v, ProbMode mode,
                                 i64 max_cells = 50'000'000);

struct LevyEstimate {
  double delta = 0;
  double value = 0;
  bool exact = true;   // false: Monte Carlo lower-bound estimator
  i64 trials = 0;      // MC only
  double se = 0;       // MC only
};

// Max mass of any closed interval [r-delta, r+delta]. An optimal
// closed window can slide left until its edge sits on a support
// point, so scanning left edges at support points is exhaustive.
LevyEstimate levy_concentration(const DistTable& table, double delta);

// Same window scan over an enumerated list of equally likely values
// (exact when the list is a full enumeration).
LevyEstimate levy_concentration_values(std::vector<double> values,
                                       double delta);

// Monte Carlo variant: windows anchored at sampled values; a
// lower-bound estimator for the true sup, reported with its SE.
LevyEstimate levy_concentration_mc(std::vector<double> samples, double delta);

struct RowAtomComparison {
  Rat lhs = 0;  // exact max atom of (Q_sigma v)_i over the 2^(n/2) bit choices
  Rat rhs = 0;  // atom_probability(difference_vector(v, base, i))
};

// The two-step anti-concentration comparison for one row; the
// contract under test elsewhere is lhs <= rhs.
RowAtomComparison two_step_row_atom(const std::vector<i64>& v,
                                    const Base& base, int row,
                                    int max_bits = 26);

// Exhaustive enumeration oracles (exponential; budget-guarded).
// All 2^n signed sums of w, and all C(n, n/2) slice sums of
// a . x over the zero-sum slice, as flat value lists.
std::vector<double> enumerate_signed_sums(const std::vector<double>& w,
                                          int max_n = 24);
std::vector<double> enumerate_slice_sums(const std::vector<double>& a,
                                         int max_n = 24);

}  // namespace lsv
