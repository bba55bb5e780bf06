#include "orlicz/sampled.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orlicz {

std::vector<double> log_nodes(const GridSpec& spec) {
  if (!(spec.u_min > 0.0) || !(spec.u_max > spec.u_min) || !is_finite(spec.u_max))
    throw std::invalid_argument("grid: need 0 < u_min < u_max < inf");
  if (spec.n < 2) throw std::invalid_argument("grid: need at least two points");
  std::vector<double> nodes(static_cast<std::size_t>(spec.n));
  double lo = std::log(spec.u_min), hi = std::log(spec.u_max);
  for (int k = 0; k < spec.n; ++k)
    nodes[static_cast<std::size_t>(k)] =
        std::exp(lo + (hi - lo) * k / (spec.n - 1));
  nodes.front() = spec.u_min;
  nodes.back() = spec.u_max;
  return nodes;
}

std::size_t SampledYoung::infinite_from() const {
  std::size_t k = values.size();
  while (k > 0 && is_inf(values[k - 1])) --k;
  return k;
}

bool SampledYoung::all_infinite_above_zero() const {
  return infinite_from() <= 1;
}

namespace {

// Slope of the last finite segment; 0 when fewer than two finite nodes.
double tail_slope(const SampledYoung& s, std::size_t k_inf) {
  if (k_inf < 2) return 0.0;
  return (s.values[k_inf - 1] - s.values[k_inf - 2]) /
         (s.grid[k_inf - 1] - s.grid[k_inf - 2]);
}

}  // namespace

double SampledYoung::operator()(double u) const {
  if (u <= 0.0) return 0.0;
  std::size_t k_inf = infinite_from();
  if (k_inf < values.size() && u >= grid[k_inf]) return kInf;
  if (k_inf == 0) return kInf;  // no finite node at all (not constructible)
  std::size_t last = k_inf - 1;
  if (u <= grid[last]) {
    auto it = std::upper_bound(grid.begin(), grid.begin() + k_inf, u);
    std::size_t i = static_cast<std::size_t>(it - grid.begin());  // grid[i] > u
    double x0 = grid[i - 1], x1 = grid[i];
    double t = (u - x0) / (x1 - x0);
    return values[i - 1] + t * (values[i] - values[i - 1]);
  }
  return values[last] + tail_slope(*this, k_inf) * (u - grid[last]);
}

double SampledYoung::right_inverse(double v) const {
  if (!(v >= 0.0)) throw std::invalid_argument("right_inverse: argument must be >= 0");
  std::size_t k_inf = infinite_from();
  double cap = (k_inf < values.size()) ? grid[k_inf] : kInf;
  if (is_inf(v)) return cap;
  if (k_inf == 0) return 0.0;
  std::size_t last = k_inf - 1;
  if (v < values[last]) {
    // first node with value > v; values[0] = 0 <= v
    std::size_t lo = 0, hi = last;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (values[mid] > v) hi = mid; else lo = mid + 1;
    }
    double x0 = grid[lo - 1], y0 = values[lo - 1];
    return x0 + (v - y0) * (grid[lo] - x0) / (values[lo] - y0);
  }
  double slope = tail_slope(*this, k_inf);
  if (slope > 0.0) {
    double u = grid[last] + (v - values[last]) / slope;
    return std::min(u, cap);
  }
  return cap;
}

void SampledYoung::validate() const {
  if (grid.size() != values.size())
    throw std::invalid_argument("sampled: grid/value size mismatch");
  if (grid.size() < 2) throw std::invalid_argument("sampled: need at least two nodes");
  if (grid[0] != 0.0) throw std::invalid_argument("sampled: grid must start at 0");
  if (values[0] != 0.0) throw std::invalid_argument("sampled: value at 0 must be 0");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("sampled: grid must be strictly increasing");
    if (std::isnan(values[i]) || values[i] < 0.0)
      throw std::invalid_argument("sampled: values must be >= 0");
    if (values[i] < values[i - 1])
      throw std::invalid_argument("sampled: values must be nondecreasing");
  }
  std::size_t k_inf = infinite_from();
  for (std::size_t i = k_inf; i < values.size(); ++i)
    if (!is_inf(values[i]))
      throw std::invalid_argument("sampled: infinite values must form a suffix");
  // discrete convexity: chords of neighbours majorize the middle node
  for (std::size_t i = 2; i < k_inf; ++i) {
    double s0 = (values[i - 1] - values[i - 2]) / (grid[i - 1] - grid[i - 2]);
    double s1 = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
    if (s1 < s0 - 1e-12 * std::max(1.0, std::abs(s0)))
      throw std::invalid_argument("sampled: convexity violated beyond slack");
  }
}

SampledYoung sample(const YoungFunction& phi, const GridSpec& spec) {
  std::vector<double> nodes = log_nodes(spec);
  SampledYoung out;
  out.grid.reserve(nodes.size() + 1);
  out.values.reserve(nodes.size() + 1);
  out.grid.push_back(0.0);
  out.values.push_back(0.0);
  for (double u : nodes) {
    out.grid.push_back(u);
    out.values.push_back(phi(u));
  }
  out.provenance = "sample(" + phi.to_text() + ")";
  return out;
}

}  // namespace orlicz
