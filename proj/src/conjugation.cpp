#include "orlicz/conjugation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace orlicz {

namespace {

// ---------- candidate s-grids ----------

constexpr double kMasterLo = 1e-9;
constexpr double kMasterHi = 1e9;
constexpr int kMasterCount = 2521;   // 140 points per decade
constexpr int kRelativeCount = 601;  // cap * 10^-18 .. cap, for small caps
constexpr int kApproachCount = 45;   // cap * (1 - 2^-k) toward an open endpoint

struct SupRange {
  std::vector<double> s;  // increasing; phi1 finite at every candidate
  DomainConvention convention = DomainConvention::Unbounded;
  bool unbounded = true;
  double cap = kInf;  // min(a, b_phi1) when bounded
};

SupRange build_range(const YoungFunction& phi1, double a) {
  SupRange r;
  double b1 = phi1.finiteness_bound();
  if (is_inf(b1))
    r.convention = DomainConvention::Unbounded;
  else
    r.convention = phi1.finite_at_bound() ? DomainConvention::ClosedAtB
                                          : DomainConvention::OpenAtB;
  r.cap = std::min(a, b1);
  r.unbounded = is_inf(r.cap);
  std::vector<double> cand;
  cand.reserve(kMasterCount + kRelativeCount + kApproachCount + 1);
  double step = std::log(kMasterHi / kMasterLo) / (kMasterCount - 1);
  for (int k = 0; k < kMasterCount; ++k) {
    double s = kMasterLo * std::exp(k * step);
    if (s < r.cap) cand.push_back(s);
  }
  if (!r.unbounded) {
    for (int k = 0; k < kRelativeCount - 1; ++k) {
      double s = r.cap * std::pow(10.0, -18.0 + 18.0 * k / (kRelativeCount - 1));
      if (s > 0.0 && s < r.cap) cand.push_back(s);
    }
    for (int k = 1; k <= kApproachCount; ++k) {
      double s = r.cap * (1.0 - std::ldexp(1.0, -k));
      if (s > 0.0 && s < r.cap) cand.push_back(s);
    }
    if (is_finite(phi1(r.cap))) cand.push_back(r.cap);
  }
  std::sort(cand.begin(), cand.end());
  // The master and cap-relative grids can land on the same point through
  // different roundings, leaving twins a few ulp apart. A twin next to the
  // discrete argmax collapses the polish bracket to one side and the row
  // silently keeps raw grid accuracy, so merge near-equal candidates.
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](double a, double b) {
                           return b <= a * (1.0 + 1e-14);
                         }),
             cand.end());
  r.s.reserve(cand.size());
  for (double s : cand)
    if (is_finite(phi1(s))) r.s.push_back(s);
  return r;
}

// ---------- objective over closed-form inputs ----------

struct Objective {
  const YoungFunction& phi;
  const YoungFunction& phi1;
  const std::vector<double>& s;
  std::vector<double> f1;

  Objective(const YoungFunction& p, const YoungFunction& p1,
            const std::vector<double>& sc)
      : phi(p), phi1(p1), s(sc) {
    f1.resize(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) f1[j] = phi1(s[j]);
  }

  double at(double u, std::size_t j) const {
    return sub_for_sup(phi(s[j] * u), f1[j]);
  }
  double g(double u, double sv) const {
    return sub_for_sup(phi(sv * u), phi1(sv));
  }
};

// Rightmost argmax of row `u` over candidate indices [jlo, jhi].
template <class RowAt>
std::int64_t scan_row(const RowAt& at, std::int64_t jlo, std::int64_t jhi) {
  double best = -kInf;
  std::int64_t jb = jlo;
  for (std::int64_t j = jlo; j <= jhi; ++j) {
    double v = at(j);
    if (v >= best) {
      best = v;
      jb = j;
    }
  }
  return jb;
}

// Divide-and-conquer row maxima: the rightmost argmax is nondecreasing in u
// for convex inputs (the objective matrix is supermodular), so each level
// splits the candidate range around the middle row's argmax.
template <class At>
void dc_rows(const At& at, std::int64_t lo, std::int64_t hi, std::int64_t jlo,
             std::int64_t jhi, std::vector<std::size_t>& arg) {
  if (lo > hi) return;
  std::int64_t mid = lo + (hi - lo) / 2;
  std::int64_t jb = scan_row([&](std::int64_t j) { return at(mid, j); }, jlo, jhi);
  arg[static_cast<std::size_t>(mid)] = static_cast<std::size_t>(jb);
  dc_rows(at, lo, mid - 1, jlo, jb, arg);
  dc_rows(at, mid + 1, hi, jb, jhi, arg);
}

struct Probe {
  double s, v;
};

// Golden-section maximization in log coordinates with a running champion
// over every evaluated point. Returns immediately on an infinite probe.
template <class F>
Probe golden_max(F&& f, double lo, double hi) {
  const double gr = 0.6180339887498949;
  Probe champ{lo, f(lo)};
  auto consider = [&](double sv, double fv) {
    if (fv >= champ.v) champ = {sv, fv};
  };
  consider(hi, f(hi));
  if (is_inf(champ.v)) return champ;
  double t0 = std::log(lo), t1 = std::log(hi);
  double x1 = t1 - gr * (t1 - t0), x2 = t0 + gr * (t1 - t0);
  double s1 = std::exp(x1), s2 = std::exp(x2);
  double f1v = f(s1), f2v = f(s2);
  consider(s1, f1v);
  consider(s2, f2v);
  for (int it = 0; it < 90 && t1 - t0 > 1e-13; ++it) {
    if (is_inf(champ.v)) return champ;
    if (f1v < f2v) {
      t0 = x1;
      x1 = x2;
      f1v = f2v;
      x2 = t0 + gr * (t1 - t0);
      s2 = std::exp(x2);
      f2v = f(s2);
      consider(s2, f2v);
    } else {
      t1 = x2;
      x2 = x1;
      f2v = f1v;
      x1 = t1 - gr * (t1 - t0);
      s1 = std::exp(x1);
      f1v = f(s1);
      consider(s1, f1v);
    }
  }
  return champ;
}

struct RowOut {
  double value, argmax;
};

// Discrete scan result -> polished row value. Two golden passes around the
// bracketing neighbours of the discrete argmax.
RowOut finish_row(const Objective& ob, const SupRange& r, double u,
                  std::size_t jb) {
  const std::vector<double>& s = r.s;
  double raw = ob.at(u, jb);
  if (is_inf(raw)) return {kInf, r.unbounded ? kInf : s[jb]};
  double value = raw, arg = s[jb];
  double lo = (jb > 0) ? s[jb - 1] : s[jb] * 0.5;
  double hi = (jb + 1 < s.size()) ? s[jb + 1] : (r.unbounded ? s[jb] * 2.0 : s[jb]);
  if (hi > lo) {
    auto f = [&](double sv) { return ob.g(u, sv); };
    Probe p = golden_max(f, lo, hi);
    if (!is_inf(p.v)) {
      double w = std::pow(hi / lo, 0.02);
      Probe p2 = golden_max(f, std::max(lo, p.s / w), std::min(hi, p.s * w));
      if (p2.v >= p.v) p = p2;
    }
    if (p.v > value) {
      value = p.v;
      arg = p.s;
    }
  }
  if (r.unbounded && jb + 1 >= s.size() && s.size() >= 2 &&
      (is_inf(value) || ob.at(u, jb) > ob.at(u, jb - 1))) {
    // The discrete argmax sits at the edge of the candidate range with the
    // objective still rising. March outward geometrically: either an
    // interior maximum gets bracketed (the sup lay beyond the candidates)
    // or the rise never stops and the sup is infinite.
    if (is_inf(value)) return {kInf, kInf};
    double best_v = value, best_s = arg, sk = s.back();
    bool diverged = true;
    for (int k = 0; k < 1200 && sk < 1e300; ++k) {
      sk *= 2.0;
      double v = ob.g(u, sk);
      if (is_inf(v)) break;
      if (v >= best_v) {
        best_v = v;
        best_s = sk;
        continue;
      }
      Probe p =
          golden_max([&](double sv) { return ob.g(u, sv); }, best_s * 0.5, sk);
      if (p.v > best_v && !is_inf(p.v)) {
        best_v = p.v;
        best_s = p.s;
      }
      diverged = false;
      break;
    }
    if (diverged) return {kInf, kInf};
    value = best_v;
    arg = best_s;
  }
  if (value < 0.0) return {0.0, 0.0};  // sup approached only as s -> 0
  return {value, arg};
}

OminusResult run_grid(const YoungFunction& phi, const YoungFunction& phi1,
                      double a, const GridSpec& spec, const char* label) {
  SupRange r = build_range(phi1, a);
  std::vector<double> nodes = log_nodes(spec);
  OminusResult out;
  out.truncation = a;
  out.domain_convention = r.convention;
  SampledYoung& g = out.function;
  g.grid.reserve(nodes.size() + 1);
  g.values.reserve(nodes.size() + 1);
  g.grid.push_back(0.0);
  g.values.push_back(0.0);
  out.argmax_profile.reserve(nodes.size() + 1);
  out.argmax_profile.emplace_back(0.0, 0.0);
  g.provenance = std::string(label) + "(" + phi.to_text() + "," + phi1.to_text() + ")";
  if (r.s.empty()) {
    // empty s-range (finiteness bound of phi1 is 0): sup over nothing is 0
    for (double u : nodes) {
      g.grid.push_back(u);
      g.values.push_back(0.0);
      out.argmax_profile.emplace_back(u, 0.0);
    }
    return out;
  }
  Objective ob(phi, phi1, r.s);
  std::vector<std::size_t> arg(nodes.size(), 0);
  dc_rows([&](std::int64_t i, std::int64_t j) {
            return ob.at(nodes[static_cast<std::size_t>(i)],
                         static_cast<std::size_t>(j));
          },
          0, static_cast<std::int64_t>(nodes.size()) - 1, 0,
          static_cast<std::int64_t>(r.s.size()) - 1, arg);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    RowOut ro = finish_row(ob, r, nodes[i], arg[i]);
    g.grid.push_back(nodes[i]);
    // polish noise must not break monotonicity of the stored sample
    double floor_v = g.values.back();
    g.values.push_back(std::max(ro.value, floor_v));
    out.argmax_profile.emplace_back(nodes[i], ro.argmax);
  }
  return out;
}

}  // namespace

OminusResult ominus(const YoungFunction& phi, const YoungFunction& phi1,
                    const GridSpec& spec) {
  return run_grid(phi, phi1, kInf, spec, "ominus");
}

OminusResult ominus_truncated(const YoungFunction& phi,
                              const YoungFunction& phi1, double a,
                              const GridSpec& spec) {
  if (!(a > 0.0) || !(a <= phi1.finiteness_bound()))
    throw std::invalid_argument("ominus_truncated: need 0 < a <= b_phi1");
  if (is_inf(a))
    throw std::invalid_argument("ominus_truncated: truncation must be finite");
  return run_grid(phi, phi1, a, spec, "ominus_truncated");
}

OminusResult classical_conjugate(const YoungFunction& phi1,
                                 const GridSpec& spec) {
  return run_grid(YoungFunction::identity(), phi1, kInf, spec,
                  "classical_conjugate");
}

namespace {

SupPoint value_at_impl(const YoungFunction& phi, const YoungFunction& phi1,
                       double a, double u) {
  if (!(u >= 0.0)) throw std::invalid_argument("value_at: u must be >= 0");
  if (u == 0.0) return {0.0, 0.0};
  SupRange r = build_range(phi1, a);
  if (r.s.empty()) return {0.0, 0.0};
  Objective ob(phi, phi1, r.s);
  std::int64_t jb = scan_row([&](std::int64_t j) {
    return ob.at(u, static_cast<std::size_t>(j));
  }, 0, static_cast<std::int64_t>(r.s.size()) - 1);
  RowOut ro = finish_row(ob, r, u, static_cast<std::size_t>(jb));
  return {ro.value, ro.argmax};
}

}  // namespace

SupPoint ominus_value_at(const YoungFunction& phi, const YoungFunction& phi1,
                         double u) {
  return value_at_impl(phi, phi1, kInf, u);
}

SupPoint ominus_truncated_value_at(const YoungFunction& phi,
                                   const YoungFunction& phi1, double a,
                                   double u) {
  if (!(a > 0.0) || !(a <= phi1.finiteness_bound()))
    throw std::invalid_argument("ominus_truncated: need 0 < a <= b_phi1");
  return value_at_impl(phi, phi1, a, u);
}

std::vector<OminusResult> truncation_sweep(const YoungFunction& phi,
                                           const YoungFunction& phi1,
                                           const std::vector<double>& a_list,
                                           const GridSpec& spec) {
  std::vector<OminusResult> out;
  out.reserve(a_list.size());
  for (double a : a_list) out.push_back(ominus_truncated(phi, phi1, a, spec));
  return out;
}

// ---------- sampled-input paths ----------

namespace {

bool discretely_convex(const SampledYoung& s) {
  if (s.grid.size() != s.values.size() || s.grid.size() < 2) return false;
  if (s.grid[0] != 0.0 || s.values[0] != 0.0) return false;
  std::size_t k_inf = s.infinite_from();
  for (std::size_t i = k_inf; i < s.values.size(); ++i)
    if (!is_inf(s.values[i])) return false;
  double prev = -kInf;
  for (std::size_t i = 1; i < k_inf; ++i) {
    if (!(s.grid[i] > s.grid[i - 1])) return false;
    if (s.values[i] < s.values[i - 1]) return false;
    double slope = (s.values[i] - s.values[i - 1]) / (s.grid[i] - s.grid[i - 1]);
    if (slope < prev - 1e-12 * std::max(1.0, std::abs(prev))) return false;
    prev = slope;
  }
  return true;
}

// Both positive grids geometric with one common ratio?
bool common_ratio(const SampledYoung& a, const SampledYoung& b, double* ratio) {
  if (a.grid.size() < 3 || b.grid.size() < 3) return false;
  double r = a.grid[2] / a.grid[1];
  for (const SampledYoung* s : {&a, &b})
    for (std::size_t i = 2; i < s->grid.size(); ++i)
      if (std::abs(s->grid[i] / s->grid[i - 1] - r) > 1e-9 * r) return false;
  *ratio = r;
  return true;
}

struct SampledObjective {
  const SampledYoung& phis;
  std::vector<double> scand, f1;   // candidates: positive phi1 nodes, finite value
  std::vector<std::size_t> jnode;  // original node index per candidate
  bool diagonal = false;
  std::vector<double> diag;  // phi at the product abscissa, indexed by i + j

  SampledObjective(const SampledYoung& ps, const SampledYoung& p1s) : phis(ps) {
    std::size_t k1 = p1s.infinite_from();
    for (std::size_t j = 1; j < k1; ++j) {
      scand.push_back(p1s.grid[j]);
      f1.push_back(p1s.values[j]);
      jnode.push_back(j);
    }
    double ratio = 0.0;
    if (common_ratio(ps, p1s, &ratio)) {
      diagonal = true;
      std::size_t dmax = (ps.grid.size() - 1) + (p1s.grid.size() - 1);
      diag.resize(dmax + 1, 0.0);
      double base = ps.grid[1] * p1s.grid[1];
      double x = base;
      for (std::size_t d = 2; d <= dmax; ++d) {
        diag[d] = phis(x);
        x *= ratio;
      }
    }
  }

  // i: u node index (>= 1), k: candidate ordinal
  double at(std::size_t i, std::size_t k) const {
    double pv = diagonal ? diag[i + jnode[k]] : phis(phis.grid[i] * scand[k]);
    return sub_for_sup(pv, f1[k]);
  }
};

OminusResult sampled_run(const SampledYoung& phis, const SampledYoung& phi1s,
                         bool want_monotone) {
  OminusResult out;
  out.truncation = kInf;
  out.domain_convention = (phi1s.infinite_from() < phi1s.values.size())
                              ? DomainConvention::OpenAtB
                              : DomainConvention::Unbounded;
  bool monotone = want_monotone;
  if (want_monotone && (!discretely_convex(phis) || !discretely_convex(phi1s))) {
    monotone = false;
    out.fallback_used = true;
  }
  SampledObjective ob(phis, phi1s);
  SampledYoung& g = out.function;
  std::size_t n = phis.grid.size();
  g.grid = phis.grid;
  g.values.assign(n, 0.0);
  out.argmax_profile.assign(n, {0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) out.argmax_profile[i].first = phis.grid[i];
  g.provenance = want_monotone ? "ominus_monotone" : "ominus_bruteforce";
  if (ob.scand.empty() || n < 2) return out;
  std::size_t m = ob.scand.size();
  std::vector<std::size_t> arg(n, 0);
  if (monotone) {
    dc_rows([&](std::int64_t i, std::int64_t j) {
              return ob.at(static_cast<std::size_t>(i),
                           static_cast<std::size_t>(j));
            },
            1, static_cast<std::int64_t>(n) - 1, 0,
            static_cast<std::int64_t>(m) - 1, arg);
  } else {
    for (std::size_t i = 1; i < n; ++i)
      arg[i] = static_cast<std::size_t>(scan_row(
          [&](std::int64_t j) { return ob.at(i, static_cast<std::size_t>(j)); },
          0, static_cast<std::int64_t>(m) - 1));
  }
  bool unbounded = out.domain_convention == DomainConvention::Unbounded;
  for (std::size_t i = 1; i < n; ++i) {
    double raw = ob.at(i, arg[i]);
    double value = raw, sarg = ob.scand[arg[i]];
    if (is_inf(raw)) {
      if (unbounded) sarg = kInf;
    } else if (raw < 0.0) {
      value = 0.0;
      sarg = 0.0;
    } else if (unbounded && arg[i] + 1 >= m && m >= 2 &&
               ob.at(i, m - 1) > ob.at(i, m - 2)) {
      sarg = kInf;
    }
    g.values[i] = value;
    out.argmax_profile[i].second = sarg;
  }
  return out;
}

}  // namespace

OminusResult ominus_bruteforce(const SampledYoung& phis,
                               const SampledYoung& phi1s) {
  return sampled_run(phis, phi1s, false);
}

OminusResult ominus_monotone(const SampledYoung& phis,
                             const SampledYoung& phi1s) {
  return sampled_run(phis, phi1s, true);
}

PowerOminusPower power_ominus_power(double p, double scale, double q,
                                    double scale1) {
  if (!(p >= 1.0) || !(q >= 1.0) || !(scale > 0.0) || !(scale1 > 0.0))
    throw std::invalid_argument("power_ominus_power: need p,q >= 1 and positive scales");
  PowerOminusPower out;
  if (q > p) {
    out.finite = true;
    out.exponent = p * q / (q - p);
    out.coeff = scale1 * (q - p) / p *
                std::pow(p * scale / (q * scale1), q / (q - p));
    return out;
  }
  out.finite = false;
  out.threshold = (q == p) ? std::pow(scale1 / scale, 1.0 / p) : 0.0;
  return out;
}

}  // namespace orlicz
