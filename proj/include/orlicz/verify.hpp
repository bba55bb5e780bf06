#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace orlicz::verify {

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst = 0.0;  // largest violation measure seen (suite-specific)
  std::string detail;  // one-line note on the worst case
  bool passed() const { return failures == 0; }
};

// Property suites shared by the command line driver and the test binaries:
//   young-inequality  phi(s u) <= gen(u) + phi1(s) at sampled points
//   dilation          conjugation commutes with argument dilation
//   truncation        truncated conjugates increase to the full one
//   holder            product norm estimate with constant 4
//   drill             reverse-estimate proof replay ends below 1/2
//   norm-modular      norm <= 1 implies modular <= norm
std::vector<std::string> suite_names();

// trials = 0 uses the suite's default size. inject_fault deliberately breaks
// the suite's comparison so it must report failures: a self-test proving the
// harness can fail.
SuiteResult run_suite(const std::string& name, std::uint64_t seed,
                      std::size_t trials, bool inject_fault);

std::vector<SuiteResult> run_all(std::uint64_t seed, std::size_t trials = 0);

}  // namespace orlicz::verify
