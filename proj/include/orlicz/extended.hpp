#pragma once

#include <cassert>
#include <cmath>
#include <limits>

// Extended nonnegative reals on top of IEEE doubles. Every arithmetic rule
// involving infinity that the library relies on lives here, so the
// conventions have exactly one home.

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_inf(double x) { return std::isinf(x); }

// a + b with inf absorbing. Neither operand may be -inf or NaN.
inline double add_ext(double a, double b) {
  assert(!std::isnan(a) && !std::isnan(b));
  assert(a > -kInf && b > -kInf);
  return a + b;
}

// plus - minus inside a supremum: plus ranges over [0, inf], minus must be
// finite, so inf - inf never forms.
inline double sub_for_sup(double plus, double minus) {
  assert(is_finite(minus));
  if (is_inf(plus)) return kInf;
  return plus - minus;
}

// 1/x with 1/0 = inf and 1/inf = 0.
inline double inv_ext(double x) {
  assert(x >= 0.0);
  if (x == 0.0) return kInf;
  if (is_inf(x)) return 0.0;
  return 1.0 / x;
}

// a * b for nonnegative extended operands with the measure-theoretic
// convention 0 * inf = 0.
inline double mul_ext(double a, double b) {
  assert(a >= 0.0 && b >= 0.0);
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

}  // namespace orlicz
