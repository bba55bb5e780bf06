#pragma once

#include <utility>
#include <vector>

#include "orlicz/sampled.hpp"

namespace orlicz {

// s-range convention for sup_s {phi(s u) - phi1(s)}: the range is (0, b_phi1)
// open when phi1 jumps to inf at its finiteness bound, (0, b_phi1] closed when
// phi1(b_phi1) < inf, and (0, inf) when b_phi1 = inf. phi1 is finite on the
// whole range, so inf - inf never forms.
enum class DomainConvention { Unbounded, OpenAtB, ClosedAtB };

struct OminusResult {
  SampledYoung function;
  // (u, s*(u)); s* = inf when the sup escapes along an unbounded range,
  // s* = 0 when the sup is only approached in the limit s -> 0 (value 0).
  std::vector<std::pair<double, double>> argmax_profile;
  double truncation = kInf;  // the cap a for the truncated variant
  DomainConvention domain_convention = DomainConvention::Unbounded;
  bool fallback_used = false;  // fast path fell back to brute force
};

OminusResult ominus(const YoungFunction& phi, const YoungFunction& phi1,
                    const GridSpec& spec = {});

// sup over 0 <= s <= a; requires 0 < a <= b_phi1. Always finite at u
// whenever phi(a u) is.
OminusResult ominus_truncated(const YoungFunction& phi,
                              const YoungFunction& phi1, double a,
                              const GridSpec& spec = {});

// identity ⊖ phi1
OminusResult classical_conjugate(const YoungFunction& phi1,
                                 const GridSpec& spec = {});

struct SupPoint {
  double value;
  double argmax;
};

// The sup at a single u, computed exactly (no interpolation of a stored
// sample). Same scan-and-polish machinery as the grid versions.
SupPoint ominus_value_at(const YoungFunction& phi, const YoungFunction& phi1,
                         double u);
SupPoint ominus_truncated_value_at(const YoungFunction& phi,
                                   const YoungFunction& phi1, double a,
                                   double u);

// Sampled-input paths. The u-grid of the result is phis' grid; the s
// candidates are the positive nodes of phi1s with finite value. Values are
// the exact discrete maxima (no polish), so the two paths must agree.
// ominus_bruteforce scans every (u, s) pair; ominus_monotone exploits the
// monotone row argmax of the convex objective via divide and conquer in
// O((n+m) log n), checking discrete convexity of both inputs first and
// falling back to the brute scan (fallback_used = true) if it fails.
OminusResult ominus_bruteforce(const SampledYoung& phis,
                               const SampledYoung& phi1s);
OminusResult ominus_monotone(const SampledYoung& phis,
                             const SampledYoung& phi1s);

std::vector<OminusResult> truncation_sweep(const YoungFunction& phi,
                                           const YoungFunction& phi1,
                                           const std::vector<double>& a_list,
                                           const GridSpec& spec = {});

// Closed form for (scale u^p) ⊖ (scale1 u^q), used as an independent oracle.
// q > p: value = coeff * u^exponent with an interior stationary argmax.
// q == p: 0 up to threshold = (scale1/scale)^(1/p), inf above.
// q <  p: inf for every u > 0 (threshold 0).
struct PowerOminusPower {
  bool finite = false;
  double coeff = 0.0;
  double exponent = 0.0;
  double threshold = 0.0;
};
PowerOminusPower power_ominus_power(double p, double scale, double q,
                                    double scale1);

}  // namespace orlicz
