#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "orlicz/conjugation.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

enum class Classification { Trivial, InsideLinfty, General };
enum class TrivialityKind { TrivialZero, BoundedByLinfty, NoRestriction };

// The space of pointwise multipliers taking L^{phi1} into L^{phi}. It is
// the Orlicz space generated by phi (-) phi1; `classification` records the
// degenerate regimes (Trivial: only the zero function multiplies;
// InsideLinfty: every multiplier is essentially bounded).
struct MultiplierSpace {
  OminusResult generator;
  Classification classification = Classification::General;
  double embed_const = 4.0;    // multiplier norm <= 4 * generator norm
  double reverse_const = 0.0;  // generator norm <= reverse_const * multiplier norm
  // When the multipliers sit inside L^inf the reverse constant is 4c for an
  // inclusion constant c that exists but is not computed; reverse_const then
  // stores the factor 4 and this flag is set. Meaningless (0) when Trivial.
  bool reverse_const_existential = false;
};

// Note the argument order: the source space comes first, the target second,
// and the generator is ominus(phi, phi1, spec).
MultiplierSpace resolve(const YoungFunction& phi1, const YoungFunction& phi,
                        const GridSpec& spec = {});

// Classification by the finiteness bounds alone: TrivialZero when
// b_phi < inf and b_phi1 = inf; BoundedByLinfty when both are finite;
// NoRestriction otherwise.
TrivialityKind triviality_check(const YoungFunction& phi,
                                const YoungFunction& phi1);

struct HolderReport {
  double norm_xy = 0.0;
  double norm_x = 0.0;
  double norm_y_gen = 0.0;
  double bound = 0.0;  // 4 * norm_x * norm_y_gen
  double ratio = 0.0;  // norm_xy / (norm_x * norm_y_gen); 0 when undefined
  bool skipped = false;  // generator norm of y is inf, nothing is asserted
  bool holds = false;
};

// Checks the product estimate: |x y| in L^phi with norm at most
// 4 * |x| in L^{phi1} * |y| in the generator space.
HolderReport holder_bound_check(const YoungFunction& phi,
                                const YoungFunction& phi1,
                                const SampledYoung& generator,
                                const SimpleFunction& x,
                                const SimpleFunction& y,
                                const MeasureSpace& sp);
HolderReport holder_bound_check(const YoungFunction& phi,
                                const YoungFunction& phi1,
                                const SimpleFunction& x,
                                const SimpleFunction& y,
                                const MeasureSpace& sp);

// For each level a_k of y, the point b_k in [0, a] attaining
// sup_{0<=s<=a} phi(s a_k) - phi1(s), so that
// phi(a_k b_k) = gen_a(a_k) + phi1(b_k) up to solver noise.
struct WitnessResult {
  SimpleFunction x;                  // level b_k on the cell of a_k; all <= a
  std::vector<double> gen_at_level;  // gen_a(a_k), aligned with y.levels
  std::vector<double> residuals;     // absolute attainment gaps, same order
  // largest gap normalized by max(1, attained value)
  double max_residual = 0.0;
};

WitnessResult construct_witness(const YoungFunction& phi,
                                const YoungFunction& phi1, double a,
                                const SimpleFunction& y);

struct DrillGroupStep {
  std::size_t index = 0;
  double group_measure = 0.0;
  double slice_modular = 0.0;   // I_{phi1} of the witness on this group
  double prefix_modular = 0.0;  // I_{phi1} of the witness on groups 0..index
  double product_modular = 0.0; // I_phi of y * witness on groups 0..index
  double product_norm = 0.0;    // Luxemburg norm of the same product
  double identity_residual = 0.0;  // integrated attainment identity gap
};

// Numerical replay of the reverse norm estimate for a multiplier y that the
// caller has rescaled so that 4 * (generator norm of y) <= 1/2: build the
// attaining witness, partition the space into groups small enough for
// phi1-norm control, walk the groups accumulating the modular bounds
// (every prefix modular and product norm must stay <= 1/2), and finish with
// the truncated-generator modular of y, which must also be <= 1/2.
struct DrillReport {
  double a = 0.0;
  double gen_norm = 0.0;          // truncated-generator norm of y as given
  double holder_estimate = 0.0;   // 4 * gen_norm
  WitnessResult witness;
  VerificationPlan plan;
  std::vector<DrillGroupStep> steps;
  double final_modular = 0.0;
  bool ok = false;
  std::string failed_step;  // empty when every check passed
};

DrillReport reverse_estimate_drill(const YoungFunction& phi,
                                   const YoungFunction& phi1,
                                   const SimpleFunction& y,
                                   const MeasureSpace& sp, double a);

// Certified lower bound for the multiplier operator norm of y: the best
// ratio |x y|_phi / |x|_phi1 over a deterministic candidate list
// (single cells, unions of the largest-|y| cells up to the budget, the full
// support, and the proof witness).
double operator_norm_lower(const YoungFunction& phi1, const YoungFunction& phi,
                           const SimpleFunction& y, const MeasureSpace& sp,
                           std::size_t candidate_count);

}  // namespace orlicz
