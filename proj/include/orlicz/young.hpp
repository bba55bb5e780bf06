#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/extended.hpp"

namespace orlicz {

enum class YoungTag {
  Power,
  ExpMinusOne,
  LinearAboveKnee,
  Identity,
  Piecewise,
  Dilated,
  CutOff,
};

struct YoungForm;

// Convex, nondecreasing phi : [0,inf) -> [0,inf] with phi(0) = 0.
// The all-infinite function (inf for every u > 0) is allowed; the zero
// function is not. Immutable and cheap to copy.
class YoungFunction {
 public:
  static YoungFunction power(double exponent, double scale = 1.0);
  static YoungFunction exp_minus_one(double scale = 1.0);
  static YoungFunction linear_above_knee(double knee);
  static YoungFunction identity();
  static YoungFunction piecewise(std::vector<std::pair<double, double>> points);
  static YoungFunction dilated(const YoungFunction& inner, double factor);
  static YoungFunction cutoff(const YoungFunction& inner, double bound,
                              double value_at_bound);

  double operator()(double u) const;

  // Right-continuous inverse inf{u >= 0 : phi(u) > v}.
  // For v = inf returns the finiteness bound (the limit from the finite side).
  double right_inverse(double v) const;

  double largest_zero() const;      // a_phi = sup{t : phi(t) = 0}
  double finiteness_bound() const;  // b_phi = sup{t : phi(t) < inf}
  bool finite_at_bound() const;     // phi(b_phi) < inf; true when b_phi = inf

  YoungFunction dilate(double factor) const;  // u -> phi(factor * u)

  // Fundamental function 1 / phi^{-1}(1/t): the Luxemburg norm of a
  // characteristic function of measure t.
  double fundamental(double t) const;

  std::string to_text() const;  // canonical constructor syntax

  const YoungForm& form() const { return *form_; }

 private:
  explicit YoungFunction(std::shared_ptr<const YoungForm> f);
  std::shared_ptr<const YoungForm> form_;
};

struct YoungForm {
  YoungTag tag = YoungTag::Identity;
  double exponent = 1.0;        // Power
  double scale = 1.0;           // Power, ExpMinusOne
  double knee = 0.0;            // LinearAboveKnee
  double factor = 1.0;          // Dilated
  double bound = 0.0;           // CutOff
  double value_at_bound = 0.0;  // CutOff; inf allowed
  std::vector<std::pair<double, double>> points;  // Piecewise
  std::shared_ptr<const YoungForm> inner;         // Dilated, CutOff
  // cached degeneracy parameters
  double a_phi = 0.0;
  double b_phi = kInf;
  bool finite_at_b = true;
};

struct DegeneracyParams {
  double largest_zero;
  double finiteness_bound;
  bool finite_at_bound;
};

DegeneracyParams degeneracy_params(const YoungFunction& phi);

// Shortest round-tripping decimal text for a finite double; "inf" otherwise.
std::string number_text(double x);

}  // namespace orlicz
