#include "orlicz/measure.hpp"

#include <cmath>
#include <sstream>

namespace orlicz {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double MeasureSpace::total() const {
  if (kind == SpaceKind::SigmaFiniteInfinite) return kInf;
  double t = 0.0;
  for (double m : cell_measure) t += m;
  return t;
}

MeasureSpace MeasureSpace::extended(std::size_t extra_cells) const {
  require(kind == SpaceKind::SigmaFiniteInfinite,
          "extended: only an infinite space grows new cells");
  MeasureSpace out = *this;
  out.cell_measure.insert(out.cell_measure.end(), extra_cells,
                          tail_cell_measure);
  return out;
}

MeasureSpace make_space(SpaceKind kind, std::size_t cell_count,
                        double measure_param) {
  require(cell_count > 0, "make_space: need at least one cell");
  require(measure_param > 0.0 && is_finite(measure_param),
          "make_space: measure parameter must be positive and finite");
  MeasureSpace sp;
  sp.kind = kind;
  if (kind == SpaceKind::Finite) {
    sp.cell_measure.assign(cell_count,
                           measure_param / static_cast<double>(cell_count));
  } else {
    sp.cell_measure.assign(cell_count, measure_param);
    sp.tail_cell_measure = measure_param;
  }
  return sp;
}

MeasureSpace make_space(std::vector<double> cell_measures) {
  require(!cell_measures.empty(), "make_space: need at least one cell");
  for (double m : cell_measures)
    require(m > 0.0 && is_finite(m), "make_space: cell measures must be positive and finite");
  MeasureSpace sp;
  sp.kind = SpaceKind::Finite;
  sp.cell_measure = std::move(cell_measures);
  return sp;
}

SimpleFunction SimpleFunction::from_levels(
    std::vector<std::pair<std::size_t, double>> lv) {
  std::sort(lv.begin(), lv.end());
  for (std::size_t i = 0; i < lv.size(); ++i) {
    require(is_finite(lv[i].second) && lv[i].second >= 0.0,
            "SimpleFunction: values must be finite and >= 0");
    require(i == 0 || lv[i].first != lv[i - 1].first,
            "SimpleFunction: duplicate cell");
  }
  SimpleFunction f;
  f.levels = std::move(lv);
  return f;
}

SimpleFunction SimpleFunction::charfn(std::size_t first_cell,
                                      std::size_t cell_count) {
  std::vector<std::pair<std::size_t, double>> lv;
  lv.reserve(cell_count);
  for (std::size_t i = 0; i < cell_count; ++i)
    lv.emplace_back(first_cell + i, 1.0);
  return from_levels(std::move(lv));
}

double SimpleFunction::value_at(std::size_t cell) const {
  auto it = std::lower_bound(
      levels.begin(), levels.end(), cell,
      [](const std::pair<std::size_t, double>& lv, std::size_t c) {
        return lv.first < c;
      });
  return (it != levels.end() && it->first == cell) ? it->second : 0.0;
}

SimpleFunction SimpleFunction::scaled(double c) const {
  require(is_finite(c) && c >= 0.0, "scaled: factor must be finite and >= 0");
  SimpleFunction out = *this;
  for (auto& lv : out.levels) lv.second *= c;
  return out;
}

bool SimpleFunction::is_zero() const {
  for (const auto& lv : levels)
    if (lv.second != 0.0) return false;
  return true;
}

double SimpleFunction::max_value() const {
  double m = 0.0;
  for (const auto& lv : levels) m = std::max(m, lv.second);
  return m;
}

SimpleFunction pointwise_product(const SimpleFunction& x,
                                 const SimpleFunction& y) {
  std::vector<std::pair<std::size_t, double>> lv;
  auto ix = x.levels.begin();
  auto iy = y.levels.begin();
  while (ix != x.levels.end() && iy != y.levels.end()) {
    if (ix->first < iy->first) {
      ++ix;
    } else if (iy->first < ix->first) {
      ++iy;
    } else {
      lv.emplace_back(ix->first, ix->second * iy->second);
      ++ix;
      ++iy;
    }
  }
  return SimpleFunction::from_levels(std::move(lv));
}

void check_on(const SimpleFunction& x, const MeasureSpace& sp) {
  for (const auto& lv : x.levels)
    require(lv.first < sp.cell_count(), "function level outside the space");
}

double charfn_norm(const YoungFunction& phi, double t) {
  require(t > 0.0, "charfn_norm: t must be positive");
  return phi.fundamental(t);
}

VerificationPlan plan_partition(const YoungFunction& phi1,
                                const MeasureSpace& sp, double a) {
  require(a >= 1.0 && is_finite(a), "plan_partition: need finite a >= 1");
  VerificationPlan plan;
  const double target = 1.0 / a;
  auto f = [&](double t) { return phi1.fundamental(t); };

  // f is nondecreasing with f(0+) = 1/b_phi1, so the target is reachable
  // exactly when a <= b_phi1. Bracket the crossing, then log-bisect.
  double lo, hi;
  if (f(1.0) <= target) {
    lo = 1.0;
    for (int i = 0; i < 120 && f(lo * 2.0) <= target; ++i) lo *= 2.0;
    if (f(lo * 2.0) <= target) {
      // the bound holds for every t we can represent: no size limit
      plan.threshold = kInf;
      plan.achieved = true;
      std::vector<CellSlice> all;
      for (std::size_t c = 0; c < sp.cell_count(); ++c)
        all.push_back({c, sp.cell_measure[c]});
      plan.groups.push_back(std::move(all));
      return plan;
    }
    hi = lo * 2.0;
  } else {
    hi = 1.0;
    lo = 0.5;
    bool found = false;
    for (int i = 0; i < 1050; ++i) {  // stop before denormals collapse to 0
      if (f(lo) <= target) {
        found = true;
        break;
      }
      hi = lo;
      lo *= 0.5;
    }
    if (!found) {
      plan.achieved = false;
      plan.threshold = 0.0;
      plan.achievable_bound = inv_ext(phi1.finiteness_bound());
      return plan;
    }
  }
  while (hi / lo > 1.0 + 1e-10) {
    double mid = lo * std::sqrt(hi / lo);
    if (f(mid) <= target)
      lo = mid;
    else
      hi = mid;
  }
  plan.threshold = lo;  // the side where the norm bound is satisfied
  plan.achieved = true;

  double room = plan.threshold;
  std::vector<CellSlice> cur;
  for (std::size_t c = 0; c < sp.cell_count(); ++c) {
    double rem = sp.cell_measure[c];
    while (rem > 0.0) {
      double take = std::min(rem, room);
      cur.push_back({c, take});
      room -= take;
      rem -= take;
      if (room <= plan.threshold * 1e-12) {
        plan.groups.push_back(cur);
        cur.clear();
        room = plan.threshold;
      }
    }
  }
  if (!cur.empty()) plan.groups.push_back(std::move(cur));
  return plan;
}

std::string to_table_text(const MeasureSpace& sp, const SimpleFunction& x) {
  check_on(x, sp);
  std::string out;
  if (sp.kind == SpaceKind::SigmaFiniteInfinite)
    out += "infinite " + number_text(sp.tail_cell_measure) + "\n";
  for (std::size_t c = 0; c < sp.cell_count(); ++c) {
    out += std::to_string(c) + " " + number_text(sp.cell_measure[c]) + " " +
           number_text(x.value_at(c)) + "\n";
  }
  return out;
}

SpaceTable parse_table_text(std::string_view text) {
  MeasureSpace sp;
  std::vector<std::pair<std::size_t, double>> lv;
  std::vector<std::pair<std::size_t, double>> measures;
  std::istringstream in{std::string(text)};
  std::string line;
  bool first_content = true;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    std::string tok;
    if (!(row >> tok)) continue;  // blank
    if (first_content && tok == "infinite") {
      sp.kind = SpaceKind::SigmaFiniteInfinite;
      require(static_cast<bool>(row >> sp.tail_cell_measure) &&
                  sp.tail_cell_measure > 0.0,
              "space table: bad tail measure");
      first_content = false;
      continue;
    }
    first_content = false;
    std::size_t cell = 0;
    double measure = 0.0, value = 0.0;
    std::istringstream fields(line);
    require(static_cast<bool>(fields >> cell >> measure >> value),
            "space table: expected 'cell_id measure value'");
    measures.emplace_back(cell, measure);
    if (value != 0.0) lv.emplace_back(cell, value);
  }
  require(!measures.empty(), "space table: no cells");
  std::sort(measures.begin(), measures.end());
  for (std::size_t i = 0; i < measures.size(); ++i) {
    require(measures[i].first == i, "space table: cell ids must cover 0..n-1");
    require(measures[i].second > 0.0 && is_finite(measures[i].second),
            "space table: measures must be positive and finite");
    sp.cell_measure.push_back(measures[i].second);
  }
  SpaceTable out{std::move(sp), SimpleFunction::from_levels(std::move(lv))};
  check_on(out.func, out.space);
  return out;
}

}  // namespace orlicz
