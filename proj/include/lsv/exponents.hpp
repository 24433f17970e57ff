#pragma once

#include <cstdint>
#include <string>

#include "lsv/exact.hpp"

namespace lsv {

// Named bundle of the exponents that parameterize every threshold
// predicate in the lab. The "paper" preset carries the analytic
// values; those only bite at astronomically large n, so the "desk"
// preset rescales the support/level-set thresholds to make the same
// predicates non-vacuous at n <= 200 while leaving the exponents
// that fix formula shapes (Halasz gain, restricted norm, LCD
// threshold, alpha) untouched.
struct ExponentProfile {
  std::string name;
  double sparse_support;     // support cutoff for "sparse" vectors
  double component_bound;    // max components in a union of two matchings
  double q2_set_min;         // least |A|,|B| size exponent for the edge test
  double level_set;          // level-set / difference-support exponent
  double k_exp;              // k = n^k_exp in the counting machinery
  double halasz_gain;        // sqrt(M) gain exponent, M = n^(2*halasz_gain)
  double restricted_norm;    // n^restricted_norm scale of the H-restricted norm
  double lcd_threshold_exp;  // LCD classification threshold n^exp / eta
  double alpha_exp;          // alpha = n^alpha_exp

  static ExponentProfile paper();
  static ExponentProfile desk();
  static ExponentProfile by_name(const std::string& name);
};

// Thresholds written "at most n^e" are evaluated with ceiling
// rounding: the lenient, monotone reading. The epsilon guard keeps
// exact powers (n^1, 4^(1/2), ...) from being bumped one past the
// integer they already equal.
i64 ceil_pow(i64 n, double e);

}  // namespace lsv
