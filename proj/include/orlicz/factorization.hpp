#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orlicz/conjugation.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

enum class EquivalenceMode { AllArguments, LargeArguments };

// Result of testing c * phi^{-1}(u) <= phi1^{-1}(u) * phi2^{-1}(u)
// <= C * phi^{-1}(u) on a log grid of arguments.
struct EquivalenceReport {
  double c = 0.0;        // smallest traced ratio past u0
  double C = kInf;       // largest traced ratio past u0
  double u0 = 0.0;       // tail threshold (LargeArguments); 0 otherwise
  bool verdict = false;  // 0 < c <= C < inf and the extremes are stable
  std::vector<std::pair<double, double>> ratio_trace;  // (u, ratio)
  std::vector<double> excluded;  // arguments where the ratio is 0/0-degenerate
  std::string diagnostic;
};

using YoungOrSampled = std::variant<YoungFunction, SampledYoung>;

// Ratio trace of phi1^{-1}(u) * phi2^{-1}(u) / phi^{-1}(u) over a log grid
// of n arguments on [u_lo, u_hi]. AllArguments takes extremes over the whole
// grid; LargeArguments searches for the smallest grid threshold u0 whose
// tail extremes are finite and stable. Stability for both modes: extending
// the range by one decade (both directions / upward) moves C/c by less
// than 1%. Arguments where phi^{-1} vanishes are excluded and recorded.
EquivalenceReport equivalence_check(const YoungFunction& phi,
                                    const YoungFunction& phi1,
                                    const YoungOrSampled& phi2,
                                    EquivalenceMode mode, double u_lo = 1e-3,
                                    double u_hi = 1e3, std::size_t n = 257);

// Computes phi2 = ominus(phi, phi1, spec) and runs equivalence_check with
// the mode matching the measure: AllArguments for an infinite measure,
// LargeArguments for a finite one. A generator that is infinite for every
// positive argument short-circuits to verdict false with a diagnostic.
EquivalenceReport factorization_check(const YoungFunction& phi,
                                      const YoungFunction& phi1,
                                      SpaceKind measure_kind,
                                      const GridSpec& spec = {});

struct DecomposeReport {
  double modular_x = 0.0;    // I_{phi1}(x), <= modular_z by construction
  double modular_z = 0.0;    // I_phi(z)
  double norm_x = 0.0;       // Luxemburg norms of the three functions
  double norm_y_gen = 0.0;   // y in the generator space; inf when it escapes
  double norm_z = 0.0;
  double product_gap = 0.0;  // max |x*y - z| over the support of z
  std::size_t dead_cells = 0;  // cells with z > 0 but x = 0 (zero region of phi)
};

struct Decomposition {
  SimpleFunction x, y;
  DecomposeReport report;
};

// Splits z into x * y with x = phi1^{-1}(phi(|z|)) cell-wise and y = z/x
// where x > 0 (0 elsewhere). The caller normalizes z to unit phi-norm.
Decomposition decompose(const SimpleFunction& z, const YoungFunction& phi,
                        const YoungFunction& phi1, const MeasureSpace& sp,
                        const SampledYoung& generator);
Decomposition decompose(const SimpleFunction& z, const YoungFunction& phi,
                        const YoungFunction& phi1, const MeasureSpace& sp);

}  // namespace orlicz
