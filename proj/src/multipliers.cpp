#include "orlicz/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace orlicz {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

TrivialityKind triviality_check(const YoungFunction& phi,
                                const YoungFunction& phi1) {
  bool b_finite = is_finite(phi.finiteness_bound());
  bool b1_finite = is_finite(phi1.finiteness_bound());
  if (b_finite && !b1_finite) return TrivialityKind::TrivialZero;
  if (b_finite && b1_finite) return TrivialityKind::BoundedByLinfty;
  return TrivialityKind::NoRestriction;
}

MultiplierSpace resolve(const YoungFunction& phi1, const YoungFunction& phi,
                        const GridSpec& spec) {
  MultiplierSpace m;
  double b = phi.finiteness_bound();
  double b1 = phi1.finiteness_bound();
  if (is_finite(b) && is_inf(b1)) {
    // only the zero function multiplies; the generator is inf everywhere,
    // so build it directly instead of running the maximizer
    SampledYoung& f = m.generator.function;
    f.grid.push_back(0.0);
    f.values.push_back(0.0);
    m.generator.argmax_profile.emplace_back(0.0, 0.0);
    for (double u : log_nodes(spec)) {
      f.grid.push_back(u);
      f.values.push_back(kInf);
      m.generator.argmax_profile.emplace_back(u, kInf);
    }
    f.provenance =
        "trivial_multiplier(" + phi.to_text() + "," + phi1.to_text() + ")";
  } else {
    m.generator = ominus(phi, phi1, spec);
  }
  if (m.generator.function.all_infinite_above_zero()) {
    m.classification = Classification::Trivial;
    m.reverse_const = 0.0;
  } else if (is_finite(b)) {
    m.classification = Classification::InsideLinfty;
    m.reverse_const = 4.0;
    m.reverse_const_existential = true;
  } else if (is_finite(b1)) {
    m.classification = Classification::General;
    m.reverse_const = 2.0 * b1;
  } else {
    m.classification = Classification::General;
    m.reverse_const = 2.0;
  }
  return m;
}

HolderReport holder_bound_check(const YoungFunction& phi,
                                const YoungFunction& phi1,
                                const SampledYoung& generator,
                                const SimpleFunction& x,
                                const SimpleFunction& y,
                                const MeasureSpace& sp) {
  HolderReport r;
  r.norm_xy = luxemburg_norm(phi, pointwise_product(x, y), sp);
  r.norm_x = luxemburg_norm(phi1, x, sp);
  r.norm_y_gen = luxemburg_norm(generator, y, sp);
  if (is_inf(r.norm_y_gen)) {
    r.skipped = true;
    r.holds = true;
    return r;
  }
  double denom = mul_ext(r.norm_x, r.norm_y_gen);
  r.bound = mul_ext(4.0, denom);
  if (denom == 0.0) {
    r.holds = r.norm_xy == 0.0;
    return r;
  }
  r.ratio = is_inf(denom) ? 0.0 : r.norm_xy / denom;
  r.holds = r.norm_xy <= r.bound * (1.0 + 1e-9) || is_inf(r.bound);
  return r;
}

HolderReport holder_bound_check(const YoungFunction& phi,
                                const YoungFunction& phi1,
                                const SimpleFunction& x,
                                const SimpleFunction& y,
                                const MeasureSpace& sp) {
  OminusResult gen = ominus(phi, phi1);
  return holder_bound_check(phi, phi1, gen.function, x, y, sp);
}

WitnessResult construct_witness(const YoungFunction& phi,
                                const YoungFunction& phi1, double a,
                                const SimpleFunction& y) {
  require(a > 0.0 && a <= phi1.finiteness_bound(),
          "construct_witness: need 0 < a <= b_phi1");
  WitnessResult w;
  std::vector<std::pair<std::size_t, double>> xl;
  xl.reserve(y.levels.size());
  for (const auto& lv : y.levels) {
    SupPoint at = ominus_truncated_value_at(phi, phi1, a, lv.second);
    double bk = at.argmax;
    double pv = phi(lv.second * bk);
    double rhs = add_ext(at.value, phi1(bk));
    double gap;
    if (is_inf(pv) || is_inf(rhs))
      gap = (is_inf(pv) && is_inf(rhs)) ? 0.0 : kInf;
    else
      gap = std::abs(pv - rhs);
    xl.emplace_back(lv.first, bk);
    w.gen_at_level.push_back(at.value);
    w.residuals.push_back(gap);
    double scale = is_inf(pv) ? 1.0 : std::max(1.0, pv);
    w.max_residual = std::max(w.max_residual, gap / scale);
  }
  w.x = SimpleFunction::from_levels(std::move(xl));
  return w;
}

DrillReport reverse_estimate_drill(const YoungFunction& phi,
                                   const YoungFunction& phi1,
                                   const SimpleFunction& y,
                                   const MeasureSpace& sp, double a) {
  require(a >= 1.0 && is_finite(a), "reverse_estimate_drill: need finite a >= 1");
  check_on(y, sp);
  DrillReport rep;
  rep.a = a;
  const double tol = 1e-9;
  if (a > phi1.finiteness_bound()) {
    rep.plan = plan_partition(phi1, sp, a);  // records the achievable bound
    rep.failed_step = "partition";
    return rep;
  }
  OminusResult gen = ominus_truncated(phi, phi1, a);
  rep.gen_norm = luxemburg_norm(gen.function, y, sp);
  rep.holder_estimate = 4.0 * rep.gen_norm;
  rep.witness = construct_witness(phi, phi1, a, y);
  std::string failed;
  if (rep.witness.max_residual > 1e-8) failed = "witness";
  rep.plan = plan_partition(phi1, sp, a);
  if (!rep.plan.achieved) {
    rep.failed_step = "partition";
    return rep;
  }

  // per-cell values of the witness, the product, and the exact generator
  auto gen_at_cell = [&](std::size_t cell) {
    for (std::size_t i = 0; i < y.levels.size(); ++i)
      if (y.levels[i].first == cell) return rep.witness.gen_at_level[i];
    return 0.0;
  };

  // refine the space to the plan's slices so prefix norms are computable
  std::vector<double> slice_measure;
  std::vector<double> slice_x, slice_y, slice_gen;
  std::vector<std::size_t> group_end;  // slice count after each group
  for (const auto& group : rep.plan.groups) {
    for (const CellSlice& cs : group) {
      slice_measure.push_back(cs.measure);
      slice_x.push_back(rep.witness.x.value_at(cs.cell));
      slice_y.push_back(y.value_at(cs.cell));
      slice_gen.push_back(gen_at_cell(cs.cell));
    }
    group_end.push_back(slice_measure.size());
  }
  MeasureSpace refined = make_space(slice_measure);

  double prefix_phi1 = 0.0, prefix_prod = 0.0, prefix_gen = 0.0;
  std::vector<std::pair<std::size_t, double>> prod_levels;
  std::size_t idx = 0;
  for (std::size_t g = 0; g < rep.plan.groups.size(); ++g) {
    DrillGroupStep step;
    step.index = g;
    double slice_mod = 0.0;
    for (; idx < group_end[g]; ++idx) {
      double m = slice_measure[idx];
      step.group_measure += m;
      slice_mod = add_ext(slice_mod, mul_ext(phi1(slice_x[idx]), m));
      double prod = slice_x[idx] * slice_y[idx];
      prefix_prod = add_ext(prefix_prod, mul_ext(phi(prod), m));
      prefix_gen = add_ext(prefix_gen, mul_ext(slice_gen[idx], m));
      if (prod > 0.0) prod_levels.emplace_back(idx, prod);
    }
    prefix_phi1 = add_ext(prefix_phi1, slice_mod);
    step.slice_modular = slice_mod;
    step.prefix_modular = prefix_phi1;
    step.product_modular = prefix_prod;
    step.product_norm = luxemburg_norm(
        phi, SimpleFunction::from_levels(prod_levels), refined);
    double ident_gap =
        (is_inf(prefix_prod) || is_inf(prefix_gen) || is_inf(prefix_phi1))
            ? kInf
            : std::abs(prefix_prod - (prefix_gen + prefix_phi1));
    step.identity_residual = ident_gap / std::max(1.0, prefix_prod);
    if (failed.empty()) {
      if (!(slice_mod <= 1.0 + tol))
        failed = "group modular";
      else if (!(prefix_phi1 <= 0.5 + tol))
        failed = "induction";
      else if (!(step.product_norm <= 0.5 + tol))
        failed = "product norm";
      else if (!(step.identity_residual <= 1e-8))
        failed = "identity";
    }
    rep.steps.push_back(step);
  }
  rep.final_modular = prefix_gen;
  if (failed.empty() && !(rep.final_modular <= 0.5 + tol)) failed = "final";
  rep.failed_step = failed;
  rep.ok = failed.empty();
  return rep;
}

double operator_norm_lower(const YoungFunction& phi1, const YoungFunction& phi,
                           const SimpleFunction& y, const MeasureSpace& sp,
                           std::size_t candidate_count) {
  require(candidate_count > 0, "operator_norm_lower: need a positive budget");
  check_on(y, sp);
  std::vector<SimpleFunction> cands;
  for (std::size_t c = 0; c < sp.cell_count() && cands.size() < candidate_count;
       ++c)
    cands.push_back(SimpleFunction::from_levels({{c, 1.0}}));
  // unions of the heaviest-y cells, largest first
  std::vector<std::size_t> order(sp.cell_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return y.value_at(l) > y.value_at(r);
  });
  std::vector<std::pair<std::size_t, double>> acc;
  for (std::size_t c : order) {
    if (cands.size() >= 2 * candidate_count) break;
    acc.emplace_back(c, 1.0);
    cands.push_back(SimpleFunction::from_levels(acc));
  }
  {  // full support of y
    std::vector<std::pair<std::size_t, double>> lv;
    for (const auto& p : y.levels)
      if (p.second > 0.0) lv.emplace_back(p.first, 1.0);
    if (!lv.empty()) cands.push_back(SimpleFunction::from_levels(std::move(lv)));
  }
  if (!y.is_zero()) {  // the attaining witness, the sharp candidate
    double b1 = phi1.finiteness_bound();
    double my = y.max_value();
    double a = is_inf(b1) ? 50.0 * (1.0 + my) * (1.0 + my) : b1;
    WitnessResult w = construct_witness(phi, phi1, a, y);
    if (!w.x.is_zero()) cands.push_back(w.x);
  }
  double best = 0.0;
  for (const SimpleFunction& x : cands) {
    double nx = luxemburg_norm(phi1, x, sp);
    if (!(nx > 0.0) || is_inf(nx)) continue;
    double nxy = luxemburg_norm(phi, pointwise_product(x, y), sp);
    if (is_inf(nxy)) return kInf;  // y multiplies some unit vector out of L^phi
    best = std::max(best, nxy / nx);
  }
  return best;
}

}  // namespace orlicz
