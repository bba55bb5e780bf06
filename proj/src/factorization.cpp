#include "orlicz/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orlicz {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double inverse_of(const YoungOrSampled& f, double v) {
  return std::visit([&](const auto& g) { return g.right_inverse(v); }, f);
}

// false when the point is degenerate (0/0 or inf/inf) and must be excluded
bool ratio_at(const YoungFunction& phi, const YoungFunction& phi1,
              const YoungOrSampled& phi2, double u, double* out) {
  double denom = phi.right_inverse(u);
  double num = mul_ext(phi1.right_inverse(u), inverse_of(phi2, u));
  if (denom == 0.0) return false;
  if (is_inf(denom)) {
    if (is_inf(num)) return false;
    *out = 0.0;
    return true;
  }
  if (is_inf(num)) {
    *out = kInf;
    return true;
  }
  *out = num / denom;
  return true;
}

struct Trace {
  std::vector<std::pair<double, double>> points;  // ascending u, included only
  std::vector<double> excluded;
};

Trace trace_range(const YoungFunction& phi, const YoungFunction& phi1,
                  const YoungOrSampled& phi2, double lo, double hi,
                  std::size_t n) {
  Trace t;
  for (double u : log_nodes(GridSpec{lo, hi, static_cast<int>(n)})) {
    double r;
    if (ratio_at(phi, phi1, phi2, u, &r))
      t.points.emplace_back(u, r);
    else
      t.excluded.push_back(u);
  }
  return t;
}

struct Extremes {
  double c = kInf;
  double C = 0.0;
  std::size_t count = 0;
};

Extremes extremes_past(const Trace& t, double u0) {
  Extremes e;
  for (const auto& p : t.points) {
    if (p.first <= u0) continue;
    e.c = std::min(e.c, p.second);
    e.C = std::max(e.C, p.second);
    ++e.count;
  }
  return e;
}

bool stable_pair(const Extremes& base, const Extremes& ext) {
  if (!(base.c > 0.0) || !is_finite(base.C)) return false;
  if (!(ext.c > 0.0) || !is_finite(ext.C)) return false;
  double spread = base.C / base.c;
  double spread_ext = ext.C / ext.c;
  return std::abs(spread_ext / spread - 1.0) < 0.01;
}

}  // namespace

EquivalenceReport equivalence_check(const YoungFunction& phi,
                                    const YoungFunction& phi1,
                                    const YoungOrSampled& phi2,
                                    EquivalenceMode mode, double u_lo,
                                    double u_hi, std::size_t n) {
  require(n >= 16, "equivalence_check: need n >= 16");
  require(u_lo > 0.0 && u_hi > u_lo && is_finite(u_hi),
          "equivalence_check: bad argument range");
  EquivalenceReport rep;
  Trace base = trace_range(phi, phi1, phi2, u_lo, u_hi, n);
  rep.ratio_trace = base.points;
  rep.excluded = base.excluded;
  if (base.points.empty()) {
    rep.diagnostic = "every argument in the range is degenerate";
    return rep;
  }
  // one-decade extensions at matching point density
  double decades = std::log10(u_hi / u_lo);
  auto ext_count = [&](double extra_decades) {
    double per_decade = static_cast<double>(n - 1) / decades;
    return static_cast<std::size_t>(
        std::ceil(per_decade * (decades + extra_decades))) + 1;
  };
  if (mode == EquivalenceMode::AllArguments) {
    Trace ext =
        trace_range(phi, phi1, phi2, u_lo / 10.0, u_hi * 10.0, ext_count(2.0));
    Extremes b = extremes_past(base, 0.0);
    Extremes e = extremes_past(ext, 0.0);
    rep.c = b.c;
    rep.C = b.C;
    rep.u0 = 0.0;
    rep.verdict = stable_pair(b, e);
    if (!rep.verdict) {
      rep.diagnostic = is_finite(b.C) && b.c > 0.0
                           ? "extremes drift under range extension"
                           : "ratio unbounded or vanishing in the range";
    }
    return rep;
  }
  Trace ext = trace_range(phi, phi1, phi2, u_lo, u_hi * 10.0, ext_count(1.0));
  for (const auto& p : base.points) {
    double u0 = p.first;
    Extremes b = extremes_past(base, u0);
    if (b.count < 8) break;  // not enough of a tail left to call it stable
    Extremes e = extremes_past(ext, u0);
    if (stable_pair(b, e)) {
      rep.c = b.c;
      rep.C = b.C;
      rep.u0 = u0;
      rep.verdict = true;
      return rep;
    }
  }
  Extremes whole = extremes_past(base, 0.0);
  rep.c = whole.c;
  rep.C = whole.C;
  rep.diagnostic = "no stable tail threshold in the range";
  return rep;
}

EquivalenceReport factorization_check(const YoungFunction& phi,
                                      const YoungFunction& phi1,
                                      SpaceKind measure_kind,
                                      const GridSpec& spec) {
  auto trivial_report = [&]() {
    EquivalenceReport rep;
    rep.diagnostic =
        "multiplier generator is infinite for every positive argument; "
        "its inverse vanishes identically";
    return rep;
  };
  if (is_finite(phi.finiteness_bound()) && is_inf(phi1.finiteness_bound()))
    return trivial_report();
  OminusResult gen = ominus(phi, phi1, spec);
  if (gen.function.all_infinite_above_zero()) return trivial_report();
  EquivalenceMode mode = measure_kind == SpaceKind::SigmaFiniteInfinite
                             ? EquivalenceMode::AllArguments
                             : EquivalenceMode::LargeArguments;
  return equivalence_check(phi, phi1, YoungOrSampled{std::move(gen.function)},
                           mode);
}

Decomposition decompose(const SimpleFunction& z, const YoungFunction& phi,
                        const YoungFunction& phi1, const MeasureSpace& sp,
                        const SampledYoung& generator) {
  check_on(z, sp);
  Decomposition d;
  std::vector<std::pair<std::size_t, double>> xl, yl;
  for (const auto& lv : z.levels) {
    if (lv.second == 0.0) continue;
    double pv = phi(lv.second);
    require(is_finite(pv), "decompose: phi(z) must be finite; normalize z first");
    double xv = phi1.right_inverse(pv);
    if (xv == 0.0 || is_inf(xv)) {
      ++d.report.dead_cells;  // z sits in the zero region of phi
      continue;
    }
    double yv = lv.second / xv;
    xl.emplace_back(lv.first, xv);
    yl.emplace_back(lv.first, yv);
    d.report.product_gap =
        std::max(d.report.product_gap, std::abs(xv * yv - lv.second));
  }
  d.x = SimpleFunction::from_levels(std::move(xl));
  d.y = SimpleFunction::from_levels(std::move(yl));
  d.report.modular_x = modular(phi1, d.x, sp);
  d.report.modular_z = modular(phi, z, sp);
  d.report.norm_x = luxemburg_norm(phi1, d.x, sp);
  d.report.norm_y_gen = luxemburg_norm(generator, d.y, sp);
  d.report.norm_z = luxemburg_norm(phi, z, sp);
  return d;
}

Decomposition decompose(const SimpleFunction& z, const YoungFunction& phi,
                        const YoungFunction& phi1, const MeasureSpace& sp) {
  OminusResult gen = ominus(phi, phi1);
  return decompose(z, phi, phi1, sp, gen.function);
}

}  // namespace orlicz
