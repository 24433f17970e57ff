#include "lsv/exponents.hpp"

#include <cmath>

#include "lsv/errors.hpp"

namespace lsv {

ExponentProfile ExponentProfile::paper() {
  return ExponentProfile{
      "paper",
      0.99,   // sparse_support
      0.6,    // component_bound
      0.8,    // q2_set_min
      0.991,  // level_set
      0.01,   // k_exp
      0.48,   // halasz_gain
      0.51,   // restricted_norm
      0.75,   // lcd_threshold_exp
      0.25,   // alpha_exp
  };
}

ExponentProfile ExponentProfile::desk() {
  // Support/level thresholds lowered so they separate vectors at
  // desk scale; shape exponents identical to the paper preset.
  return ExponentProfile{
      "desk",
      0.75,  // sparse_support
      0.6,   // component_bound
      0.55,  // q2_set_min
      0.75,  // level_set
      0.01,  // k_exp
      0.48,  // halasz_gain
      0.51,  // restricted_norm
      0.75,  // lcd_threshold_exp
      0.25,  // alpha_exp
  };
}

ExponentProfile ExponentProfile::by_name(const std::string& name) {
  if (name == "paper") return paper();
  if (name == "desk") return desk();
  throw PreconditionError("profile", "unknown exponent profile '" + name +
                                         "' (expected paper|desk)");
}

i64 ceil_pow(i64 n, double e) {
  if (n < 0) throw PreconditionError("n >= 0", "ceil_pow of negative base");
  if (n == 0) return 0;
  double v = std::pow(static_cast<double>(n), e);
  return static_cast<i64>(std::ceil(v - 1e-9));
}

}  // namespace lsv
