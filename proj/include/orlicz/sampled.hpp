#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "orlicz/young.hpp"

namespace orlicz {

// n log-spaced points on [u_min, u_max]; samplers prepend u = 0.
struct GridSpec {
  double u_min = 1e-6;
  double u_max = 1e6;
  int n = 4097;
};

// The n log-spaced nodes (without the 0 node). Throws on a bad spec.
std::vector<double> log_nodes(const GridSpec& spec);

// A Young function known through samples: grid[0] = 0, grid strictly
// increasing, values nondecreasing with any infinite values forming a
// contiguous suffix. Evaluation is piecewise linear on the finite part;
// past the last finite node the final slope continues until the first
// infinite node (if any), infinite from there on.
struct SampledYoung {
  std::vector<double> grid;
  std::vector<double> values;
  std::string provenance;

  double operator()(double u) const;
  double right_inverse(double v) const;

  // Index of the first infinite value; values.size() if none.
  std::size_t infinite_from() const;
  bool all_infinite_above_zero() const;

  // Checks the carrier invariants (monotone values, contiguous infinite
  // suffix, discrete convexity up to 1e-12 relative slack). Throws
  // std::invalid_argument naming the first violation.
  void validate() const;
};

SampledYoung sample(const YoungFunction& phi, const GridSpec& spec);

}  // namespace orlicz
