#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orlicz/extended.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

enum class SpaceKind { Finite, SigmaFiniteInfinite };

// Discretized nonatomic measure space: a finite list of positively weighted
// cells. An infinite space is a finite prefix of cells plus a tail rule that
// mints further cells of a fixed measure on demand (extended()).
struct MeasureSpace {
  SpaceKind kind = SpaceKind::Finite;
  std::vector<double> cell_measure;
  double tail_cell_measure = 1.0;  // SigmaFiniteInfinite only

  std::size_t cell_count() const { return cell_measure.size(); }
  double total() const;  // inf for the infinite kind
  MeasureSpace extended(std::size_t extra_cells) const;
};

// Finite: measure_param is the total mass, spread over equal cells
// (default 1.0 models the unit interval). SigmaFiniteInfinite: measure_param
// is the measure of each cell.
MeasureSpace make_space(SpaceKind kind, std::size_t cell_count,
                        double measure_param = 1.0);
MeasureSpace make_space(std::vector<double> cell_measures);

// Nonnegative step function: sparse (cell, value) levels, zero on every
// unlisted cell. Values are finite.
struct SimpleFunction {
  std::vector<std::pair<std::size_t, double>> levels;  // sorted, unique cells

  static SimpleFunction from_levels(std::vector<std::pair<std::size_t, double>> lv);
  static SimpleFunction charfn(std::size_t first_cell, std::size_t cell_count);

  double value_at(std::size_t cell) const;
  SimpleFunction scaled(double c) const;
  bool is_zero() const;
  double max_value() const;
};

SimpleFunction pointwise_product(const SimpleFunction& x, const SimpleFunction& y);

// Throws std::invalid_argument when a level refers to a missing cell.
void check_on(const SimpleFunction& x, const MeasureSpace& sp);

// I_phi(x) = sum over cells of phi(value) * measure. Phi is any callable
// double -> double with the extended-value convention (YoungFunction,
// SampledYoung, or a lambda).
template <class Phi>
double modular(const Phi& phi, const SimpleFunction& x, const MeasureSpace& sp) {
  double total = 0.0;
  for (const auto& lv : x.levels) {
    if (lv.first >= sp.cell_count())
      throw std::invalid_argument("modular: function level outside the space");
    if (lv.second == 0.0) continue;
    total = add_ext(total, mul_ext(phi(lv.second), sp.cell_measure[lv.first]));
    if (is_inf(total)) return kInf;
  }
  return total;
}

// inf{lambda > 0 : I_phi(x/lambda) <= 1} by geometric bracketing and
// log-bisection, returned from the side where the modular is <= 1, so the
// result always satisfies I_phi(x/result) <= 1. Bracket ratio tolerance
// 1 + 1e-10; growth capped at 2^160 (inf past the cap).
template <class Phi>
double luxemburg_norm(const Phi& phi, const SimpleFunction& x,
                      const MeasureSpace& sp) {
  check_on(x, sp);
  if (x.is_zero()) return 0.0;
  auto mod_at = [&](double lam) {
    double s = 0.0;
    for (const auto& lv : x.levels) {
      if (lv.second == 0.0) continue;
      s = add_ext(s, mul_ext(phi(lv.second / lam), sp.cell_measure[lv.first]));
      if (is_inf(s)) return kInf;
    }
    return s;
  };
  double hi = 1.0;
  for (int i = 0; i < 160 && mod_at(hi) > 1.0; ++i) hi *= 2.0;
  if (mod_at(hi) > 1.0) return kInf;
  double lo = hi * 0.5;
  for (int i = 0; i < 400 && !(mod_at(lo) > 1.0); ++i) {
    hi = lo;
    lo *= 0.5;
  }
  if (!(mod_at(lo) > 1.0)) return hi;  // norm below any positive resolution
  while (hi / lo > 1.0 + 1e-10) {
    double mid = lo * std::sqrt(hi / lo);  // bracket ratio stays <= 2
    if (mod_at(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// Luxemburg norm of a characteristic function of a set of measure t.
double charfn_norm(const YoungFunction& phi, double t);

struct NormModularReport {
  double norm = 0.0;
  double modular_value = 0.0;
  bool vacuous = false;  // norm > 1, nothing to check
  bool holds = false;
};

// Checks: norm <= 1 implies modular <= norm.
template <class Phi>
NormModularReport check_norm_modular(const Phi& phi, const SimpleFunction& x,
                                     const MeasureSpace& sp) {
  NormModularReport r;
  r.norm = luxemburg_norm(phi, x, sp);
  r.modular_value = modular(phi, x, sp);
  r.vacuous = r.norm > 1.0;
  r.holds = r.vacuous ||
            r.modular_value <= r.norm + 1e-12 * std::max(1.0, r.norm);
  return r;
}

struct CellSlice {
  std::size_t cell = 0;
  double measure = 0.0;
};

struct VerificationPlan {
  double threshold = 0.0;  // t_a: largest t with charfn_norm(phi1, t) <= 1/a
  bool achieved = false;
  double achievable_bound = 0.0;  // inf over t of charfn_norm when not achieved
  std::vector<std::vector<CellSlice>> groups;  // each group's measure <= threshold
};

// Finds t_a by log-bisection on the fundamental function and splits the
// space into groups of measure <= t_a. Cells wider than t_a are sliced; the
// space is nonatomic, so a slice is a legitimate measurable subset. Fails
// (achieved = false, empty groups) when charfn_norm cannot reach 1/a, which
// happens exactly when a exceeds the finiteness bound of phi1.
VerificationPlan plan_partition(const YoungFunction& phi1,
                                const MeasureSpace& sp, double a);

// Plain-text table round-trip: optional "infinite <tail_measure>" directive
// line, then one "cell_id measure value" row per cell; '#' starts a comment.
std::string to_table_text(const MeasureSpace& sp, const SimpleFunction& x);

struct SpaceTable {
  MeasureSpace space;
  SimpleFunction func;
};

SpaceTable parse_table_text(std::string_view text);

}  // namespace orlicz
