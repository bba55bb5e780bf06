#include "orlicz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <utility>

#include "orlicz/conjugation.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/multipliers.hpp"
#include "orlicz/young.hpp"

namespace orlicz::verify {
namespace {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double log_uniform(double lo, double hi) {
    return lo * std::exp(unit() * std::log(hi / lo));
  }
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(gen() % n);
  }
};

std::string note(const char* fmt, ...) {
  char buf[192];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

struct Pair {
  const char* name;
  YoungFunction phi;
  YoungFunction phi1;
};

// Random sparse step function on [0, cells): up to max_levels distinct cells
// with log-uniform values in [lo, hi].
SimpleFunction random_step(Rng& rng, std::size_t cells, std::size_t max_levels,
                           double lo, double hi) {
  std::vector<std::pair<std::size_t, double>> lv;
  std::size_t want = 1 + rng.index(max_levels);
  for (std::size_t k = 0; k < want; ++k) {
    std::size_t cell = rng.index(cells);
    bool dup = false;
    for (const auto& e : lv) dup = dup || e.first == cell;
    if (dup) continue;
    lv.emplace_back(cell, rng.log_uniform(lo, hi));
  }
  return SimpleFunction::from_levels(std::move(lv));
}

// phi(s u) <= (phi (-) phi1)(u) + phi1(s) at exact grid nodes of the
// computed conjugate (node values carry no interpolation error) against
// independently drawn s.
SuiteResult young_inequality(std::uint64_t seed, std::size_t trials,
                             bool inject) {
  SuiteResult r;
  r.name = "young-inequality";
  if (trials == 0) trials = 3000;
  auto P2 = YoungFunction::power(2.0);
  auto P3 = YoungFunction::power(3.0);
  auto Id = YoungFunction::identity();
  std::vector<Pair> pairs = {
      {"pow2/pow3", P2, P3},
      {"pow3/pow2", P3, P2},
      {"id/pow2", Id, P2},
      {"pow2/id", P2, Id},
      {"id/id", Id, Id},
      {"expm1/pow2", YoungFunction::exp_minus_one(), P2},
      {"pow2/cut", P2, YoungFunction::cutoff(P3, 2.0, kInf)},
      {"cut/pow2", YoungFunction::cutoff(P2, 1.0, kInf), P2},
  };
  GridSpec grid{1e-6, 1e6, 1025};
  struct Prepared {
    Pair p;
    OminusResult gen;
  };
  std::vector<Prepared> prep;
  prep.reserve(pairs.size());
  for (auto& p : pairs) prep.push_back({p, ominus(p.phi, p.phi1, grid)});

  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto& pp = prep[t % prep.size()];
    const auto& g = pp.gen.function;
    std::size_t i = 1 + rng.index(g.grid.size() - 1);
    double u = g.grid[i];
    double s = rng.log_uniform(1e-4, 1e4);
    double lhs = pp.p.phi(s * u);
    double rhs = add_ext(g.values[i], pp.p.phi1(s));
    if (inject && !is_inf(lhs)) lhs = lhs * 1.001 + 1e-3;
    double viol;
    if (is_inf(lhs))
      viol = is_inf(rhs) ? 0.0 : 1.0;
    else if (is_inf(rhs))
      viol = 0.0;
    else
      viol = (lhs - rhs) / std::max(1.0, lhs);
    ++r.trials;
    if (viol > 1e-9) {
      ++r.failures;
      if (viol > r.worst) {
        r.worst = viol;
        r.detail = note("%s: u=%.6g s=%.6g gap=%.3g", pp.p.name, u, s, viol);
      }
    } else if (r.failures == 0 && viol > r.worst) {
      r.worst = viol;
      r.detail = note("%s: u=%.6g s=%.6g gap=%.3g", pp.p.name, u, s, viol);
    }
  }
  return r;
}

// (phi∘(a·)) (-) (phi1∘(b·)) at u equals (phi (-) phi1) at a u / b. Both
// sides are computed on grids whose nodes line up exactly, so the comparison
// is node-to-node with no interpolation.
SuiteResult dilation(std::uint64_t seed, std::size_t trials, bool inject) {
  (void)seed;
  (void)trials;  // deterministic grid sweep
  SuiteResult r;
  r.name = "dilation";
  auto P2 = YoungFunction::power(2.0);
  auto P3 = YoungFunction::power(3.0);
  auto Id = YoungFunction::identity();
  struct Case {
    const char* name;
    YoungFunction phi;
    YoungFunction phi1;
    double a;
    double b;
  };
  std::vector<Case> cases = {
      {"pow2/pow3 a=2 b=3", P2, P3, 2.0, 3.0},
      {"id/pow2 a=0.5 b=4", Id, P2, 0.5, 4.0},
  };
  GridSpec grid{1e-4, 1e4, 513};
  for (const auto& c : cases) {
    auto lhs = ominus(c.phi.dilate(c.a), c.phi1.dilate(c.b), grid);
    GridSpec moved{grid.u_min * c.a / c.b, grid.u_max * c.a / c.b, grid.n};
    auto rhs = ominus(c.phi, c.phi1, moved);
    const auto& lf = lhs.function;
    const auto& rf = rhs.function;
    for (std::size_t i = 1; i < lf.grid.size(); ++i) {
      double v1 = lf.values[i];
      double v2 = rf.values[i];
      double rel;
      if (is_inf(v1) || is_inf(v2))
        rel = (is_inf(v1) && is_inf(v2)) ? 0.0 : 1.0;
      else
        rel = std::fabs(v1 - v2) / std::max(1.0, std::max(v1, v2));
      if (inject) rel += 1e-3;
      ++r.trials;
      if (rel > 1e-6) ++r.failures;
      if (rel > r.worst) {
        r.worst = rel;
        r.detail = note("%s: u=%.6g rel=%.3g", c.name, lf.grid[i], rel);
      }
    }
  }
  return r;
}

// Truncated conjugates increase with the cap and match the full conjugate
// once the cap clears every recorded argmax.
SuiteResult truncation(std::uint64_t seed, std::size_t trials, bool inject) {
  (void)seed;
  (void)trials;
  SuiteResult r;
  r.name = "truncation";
  std::vector<Pair> pairs = {
      {"pow2/pow3", YoungFunction::power(2.0), YoungFunction::power(3.0)},
      {"id/pow2", YoungFunction::identity(), YoungFunction::power(2.0)},
  };
  GridSpec grid{1e-2, 1e1, 257};
  for (const auto& p : pairs) {
    auto full = ominus(p.phi, p.phi1, grid);
    double bound = 0.0;
    for (const auto& pr : full.argmax_profile)
      if (!is_inf(pr.second)) bound = std::max(bound, pr.second);
    bound = std::max(bound, 1e-3);
    std::vector<double> a_list = {bound / 16.0, bound / 4.0, bound,
                                  4.0 * bound};
    auto sweep = truncation_sweep(p.phi, p.phi1, a_list, grid);
    double prev = kInf;
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      const auto& tf = sweep[k].function;
      double d = 0.0;
      bool order_broken = false;
      for (std::size_t i = 1; i < tf.grid.size(); ++i) {
        double tv = tf.values[i];
        double fv = full.function.values[i];
        if (is_inf(fv)) {
          if (!is_inf(tv)) d = std::max(d, 1.0);
          continue;
        }
        if (is_inf(tv) || tv - fv > 1e-9 * std::max(1.0, fv))
          order_broken = true;  // truncated sup exceeded the full sup
        else
          d = std::max(d, (fv - tv) / std::max(1.0, fv));
      }
      if (inject) d += 1e-3;
      ++r.trials;
      bool bad = order_broken;
      if (d > prev + 1e-9) bad = true;  // not shrinking with the cap
      if (a_list[k] >= bound * (1.0 - 1e-12) && d > 1e-6) bad = true;
      if (bad) ++r.failures;
      if (d > r.worst && a_list[k] >= bound * (1.0 - 1e-12)) {
        r.worst = d;
        r.detail = note("%s: a=%.6g max rel gap=%.3g", p.name, a_list[k], d);
      }
      prev = d;
    }
  }
  return r;
}

// Product estimate |x y|_phi <= 4 |x|_phi1 |y|_gen on random step functions.
SuiteResult holder(std::uint64_t seed, std::size_t trials, bool inject) {
  SuiteResult r;
  r.name = "holder";
  if (trials == 0) trials = 1500;
  auto P2 = YoungFunction::power(2.0);
  auto P3 = YoungFunction::power(3.0);
  auto P4 = YoungFunction::power(4.0);
  auto Id = YoungFunction::identity();
  std::vector<Pair> pairs = {
      {"pow2/pow3", P2, P3},   {"id/pow2", Id, P2},
      {"pow2/pow4", P2, P4},   {"id/id", Id, Id},
      {"id/expm1", Id, YoungFunction::exp_minus_one()},
      {"pow2/pow2", P2, P2},
  };
  GridSpec grid{1e-6, 1e6, 1025};
  struct Prepared {
    Pair p;
    OminusResult gen;
  };
  std::vector<Prepared> prep;
  for (auto& p : pairs) prep.push_back({p, ominus(p.phi, p.phi1, grid)});
  auto sp = make_space(SpaceKind::Finite, 64, 1.0);

  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto& pp = prep[t % prep.size()];
    auto x = random_step(rng, 64, 6, 1e-2, 4.0);
    auto y = random_step(rng, 64, 6, 1e-2, 4.0);
    auto rep = holder_bound_check(pp.p.phi, pp.p.phi1, pp.gen.function, x, y, sp);
    ++r.trials;
    bool holds = rep.holds;
    if (inject)
      holds = rep.skipped || rep.norm_xy <= rep.bound * 1e-9;
    if (!holds) ++r.failures;
    if (!rep.skipped && rep.ratio > r.worst) {
      r.worst = rep.ratio;
      r.detail = note("%s: max ratio %.6g of allowed 4", pp.p.name, rep.ratio);
    }
  }
  return r;
}

// Reverse-estimate replay: after the rescale y -> y / (8 |y|_gen) every
// inductive quantity stays <= 1/2. Fault injection skips the rescale
// discipline (scales y up a hundredfold), which must break the drill.
SuiteResult drill(std::uint64_t seed, std::size_t trials, bool inject) {
  SuiteResult r;
  r.name = "drill";
  if (trials == 0) trials = 12;
  auto P2 = YoungFunction::power(2.0);
  auto P3 = YoungFunction::power(3.0);
  auto Id = YoungFunction::identity();
  std::vector<Pair> pairs = {
      {"pow2/pow3", P2, P3},
      {"pow2/pow2", P2, P2},
      {"id/pow2", Id, P2},
  };
  GridSpec grid{1e-6, 1e6, 1025};
  struct Prepared {
    Pair p;
    OminusResult gen;
  };
  std::vector<Prepared> prep;
  for (auto& p : pairs) prep.push_back({p, ominus(p.phi, p.phi1, grid)});
  auto sp = make_space(SpaceKind::Finite, 64, 1.0);

  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto& pp = prep[t % prep.size()];
    auto y = random_step(rng, 64, 5, 0.05, 4.0);
    double ny = luxemburg_norm(pp.gen.function, y, sp);
    ++r.trials;
    if (!(ny > 0.0) || is_inf(ny)) continue;
    double scale = 1.0 / (8.0 * ny);
    if (inject) scale *= 100.0;
    auto rep = reverse_estimate_drill(pp.p.phi, pp.p.phi1, y.scaled(scale), sp,
                                      2.0);
    if (!rep.ok) {
      ++r.failures;
      r.detail = note("%s: failed at %s", pp.p.name, rep.failed_step.c_str());
    }
    if (rep.final_modular > r.worst && !is_inf(rep.final_modular))
      r.worst = rep.final_modular;
  }
  return r;
}

// Norm <= 1 implies modular <= norm, on random spaces and step functions.
SuiteResult norm_modular(std::uint64_t seed, std::size_t trials, bool inject) {
  SuiteResult r;
  r.name = "norm-modular";
  if (trials == 0) trials = 1200;
  std::vector<YoungFunction> phis = {
      YoungFunction::power(2.0),          YoungFunction::power(1.5),
      YoungFunction::identity(),          YoungFunction::exp_minus_one(),
      YoungFunction::linear_above_knee(1.0), YoungFunction::power(3.0, 0.5),
  };
  const std::size_t cell_choices[] = {1, 4, 16, 64};
  const double total_choices[] = {0.5, 1.0, 4.0};

  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto& phi = phis[t % phis.size()];
    std::size_t cells = cell_choices[rng.index(4)];
    double total = total_choices[rng.index(3)];
    auto sp = make_space(SpaceKind::Finite, cells, total);
    std::vector<std::pair<std::size_t, double>> lv;
    for (std::size_t c = 0; c < cells; ++c)
      if (rng.unit() < 0.5) lv.emplace_back(c, rng.log_uniform(1e-2, 3.0));
    auto x = SimpleFunction::from_levels(std::move(lv));
    auto rep = check_norm_modular(phi, x, sp);
    ++r.trials;
    bool holds = rep.holds;
    if (inject) holds = rep.vacuous || rep.modular_value <= rep.norm - 1.0;
    if (!holds) {
      ++r.failures;
      r.detail = note("norm=%.6g modular=%.6g", rep.norm, rep.modular_value);
    }
    if (!rep.vacuous) {
      double slack = rep.modular_value - rep.norm;
      if (slack > r.worst) r.worst = slack;
    }
  }
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"young-inequality", "dilation",  "truncation",
          "holder",           "drill",     "norm-modular"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed,
                      std::size_t trials, bool inject_fault) {
  if (name == "young-inequality")
    return young_inequality(seed, trials, inject_fault);
  if (name == "dilation") return dilation(seed, trials, inject_fault);
  if (name == "truncation") return truncation(seed, trials, inject_fault);
  if (name == "holder") return holder(seed, trials, inject_fault);
  if (name == "drill") return drill(seed, trials, inject_fault);
  if (name == "norm-modular") return norm_modular(seed, trials, inject_fault);
  throw std::invalid_argument("unknown verification suite: " + name);
}

std::vector<SuiteResult> run_all(std::uint64_t seed, std::size_t trials) {
  std::vector<SuiteResult> out;
  for (const auto& n : suite_names()) out.push_back(run_suite(n, seed, trials, false));
  return out;
}

}  // namespace orlicz::verify
