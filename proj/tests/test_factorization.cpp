#include <cmath>
#include <vector>

#include "doctest.h"
#include "orlicz/factorization.hpp"

using namespace orlicz;

namespace {

// (27/4)^(1/6): the constant ratio phi1^{-1} phi2^{-1} / phi^{-1} for the
// square/cube pair with the exact sixth-power complement
const double kPowerRatio = std::pow(27.0 / 4.0, 1.0 / 6.0);

}  // namespace

TEST_CASE("exact power complement gives a constant ratio and a true verdict") {
  auto phi = YoungFunction::power(2.0);
  auto phi1 = YoungFunction::power(3.0);
  auto phi2 = YoungFunction::power(6.0, 4.0 / 27.0);
  auto rep = equivalence_check(phi, phi1, YoungOrSampled{phi2},
                               EquivalenceMode::AllArguments);
  CHECK(rep.verdict);
  CHECK(rep.u0 == 0.0);
  CHECK(rep.excluded.empty());
  CHECK(rep.c == doctest::Approx(kPowerRatio).epsilon(1e-9));
  CHECK(rep.C == doctest::Approx(kPowerRatio).epsilon(1e-9));
  for (const auto& p : rep.ratio_trace)
    CHECK(p.second == doctest::Approx(kPowerRatio).epsilon(1e-9));

  // rescaling the complement moves both constants together
  auto rep2 = equivalence_check(phi, phi1,
                                YoungOrSampled{YoungFunction::power(6.0, 64.0 * 4.0 / 27.0)},
                                EquivalenceMode::AllArguments);
  CHECK(rep2.verdict);
  CHECK(rep2.c == doctest::Approx(kPowerRatio / 2.0).epsilon(1e-9));
  CHECK(rep2.C == doctest::Approx(kPowerRatio / 2.0).epsilon(1e-9));
}

TEST_CASE("mismatched exponent drifts and is caught by the range extension") {
  auto rep = equivalence_check(YoungFunction::power(2.0),
                               YoungFunction::power(3.0),
                               YoungOrSampled{YoungFunction::power(4.0)},
                               EquivalenceMode::AllArguments);
  // the ratio is u^{1/12}: finite extremes on any window, but not stable
  CHECK_FALSE(rep.verdict);
  CHECK(rep.c > 0.0);
  CHECK(is_finite(rep.C));
  CHECK(rep.diagnostic == "extremes drift under range extension");
}

TEST_CASE("argument validation") {
  auto p2 = YoungFunction::power(2.0);
  auto p3 = YoungFunction::power(3.0);
  YoungOrSampled c{YoungFunction::power(6.0)};
  CHECK_THROWS_AS(equivalence_check(p2, p3, c, EquivalenceMode::AllArguments,
                                    1e-3, 1e3, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(equivalence_check(p2, p3, c, EquivalenceMode::AllArguments,
                                    0.0, 1e3, 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(equivalence_check(p2, p3, c, EquivalenceMode::AllArguments,
                                    1e3, 1e-3, 64),
                  std::invalid_argument);
}

TEST_CASE("tail mode ignores low-end collapse that sinks the all-argument mode") {
  // sample the generator on a narrow grid: below its first positive node the
  // interpolated inverse is linear and the ratio collapses. Extending the
  // range downward exposes that, so the all-argument verdict is false; the
  // tail mode only extends upward, where the ratio has settled.
  auto phi = YoungFunction::power(2.0);
  auto phi1 = YoungFunction::power(3.0);
  auto gen = ominus(phi, phi1, GridSpec{1e-2, 1e2, 257});
  auto all = equivalence_check(phi, phi1, YoungOrSampled{gen.function},
                               EquivalenceMode::AllArguments, 1e-16, 1.0, 257);
  CHECK_FALSE(all.verdict);
  auto tail = equivalence_check(phi, phi1, YoungOrSampled{gen.function},
                                EquivalenceMode::LargeArguments, 1e-16, 1.0, 257);
  CHECK(tail.verdict);
  CHECK(tail.u0 == doctest::Approx(1e-16));  // first grid point already works
  CHECK(tail.c < 0.1);  // the collapsed region stays inside the tail
  CHECK(tail.C == doctest::Approx(kPowerRatio).epsilon(0.05));

  // drift at infinity defeats every candidate threshold
  auto drift = equivalence_check(phi, phi1,
                                 YoungOrSampled{YoungFunction::power(4.0)},
                                 EquivalenceMode::LargeArguments);
  CHECK_FALSE(drift.verdict);
  CHECK(drift.diagnostic == "no stable tail threshold in the range");
}

TEST_CASE("assembled factorization check on the power pair") {
  auto phi = YoungFunction::power(2.0);
  auto phi1 = YoungFunction::power(3.0);

  auto inf_rep = factorization_check(phi, phi1, SpaceKind::SigmaFiniteInfinite);
  CHECK(inf_rep.verdict);
  CHECK(inf_rep.u0 == 0.0);
  CHECK(inf_rep.c == doctest::Approx(kPowerRatio).epsilon(1e-3));
  CHECK(inf_rep.C / inf_rep.c <= 1.001);

  auto fin_rep = factorization_check(phi, phi1, SpaceKind::Finite);
  CHECK(fin_rep.verdict);
  CHECK(fin_rep.u0 > 0.0);
  CHECK(fin_rep.c == doctest::Approx(kPowerRatio).epsilon(1e-3));
}

TEST_CASE("identical spaces factor through an indicator-like generator") {
  auto p2 = YoungFunction::power(2.0);
  auto rep = factorization_check(p2, p2, SpaceKind::SigmaFiniteInfinite);
  // generator is 0 below 1 and inf above, so its inverse is the constant 1
  CHECK(rep.verdict);
  CHECK(rep.c == doctest::Approx(1.0).epsilon(0.02));
  CHECK(rep.C == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("degenerate generator short-circuits with a diagnostic") {
  auto p2 = YoungFunction::power(2.0);
  auto cut1 = YoungFunction::cutoff(p2, 1.0, kInf);

  // bounded target over unbounded source
  auto rep = factorization_check(cut1, p2, SpaceKind::Finite);
  CHECK_FALSE(rep.verdict);
  CHECK(rep.diagnostic.find("infinite for every positive argument") !=
        std::string::npos);
  CHECK(rep.ratio_trace.empty());

  // same outcome when only the computed generator reveals the collapse
  auto rep2 = factorization_check(YoungFunction::exp_minus_one(), p2,
                                  SpaceKind::Finite);
  CHECK_FALSE(rep2.verdict);
  CHECK(rep2.diagnostic.find("infinite for every positive argument") !=
        std::string::npos);
}

TEST_CASE("decomposition splits a function exactly on its support") {
  auto phi = YoungFunction::power(2.0);
  auto phi1 = YoungFunction::power(3.0);
  auto sp = make_space(SpaceKind::Finite, 8);
  auto z = SimpleFunction::from_levels(
      {{0, 0.5}, {1, 2.0}, {3, 1.0}, {5, 0.125}, {7, 3.0}});
  auto d = decompose(z, phi, phi1, sp);

  CHECK(d.report.dead_cells == 0);
  CHECK(d.report.product_gap <= 1e-12 * z.max_value());
  for (const auto& lv : z.levels) {
    double xv = d.x.value_at(lv.first);
    double yv = d.y.value_at(lv.first);
    CHECK(xv * yv == doctest::Approx(lv.second).epsilon(1e-12));
    // x is phi1^{-1}(phi(z)): here z^{2/3}
    CHECK(xv == doctest::Approx(std::pow(lv.second, 2.0 / 3.0)).epsilon(1e-9));
  }
  // the first factor spends exactly the modular budget of z
  CHECK(d.report.modular_x ==
        doctest::Approx(d.report.modular_z).epsilon(1e-9));
  CHECK(d.report.modular_x <= d.report.modular_z + 1e-9);
  CHECK(d.report.norm_x > 0.0);
  CHECK(is_finite(d.report.norm_y_gen));
  CHECK(d.report.norm_z > 0.0);
}

TEST_CASE("decomposition skips the zero region of phi and rejects infinite values") {
  auto knee = YoungFunction::linear_above_knee(1.0);
  auto phi1 = YoungFunction::power(3.0);
  auto sp = make_space(SpaceKind::Finite, 4);
  auto z = SimpleFunction::from_levels({{0, 0.5}, {1, 2.0}});
  auto d = decompose(z, knee, phi1, sp);
  CHECK(d.report.dead_cells == 1);  // knee(0.5) = 0 gives no first factor
  CHECK(d.x.value_at(0) == 0.0);
  CHECK(d.x.value_at(1) == doctest::Approx(1.0));  // phi1^{-1}(knee(2)) = 1
  CHECK(d.y.value_at(1) == doctest::Approx(2.0));

  auto cut = YoungFunction::cutoff(YoungFunction::power(2.0), 1.0, kInf);
  auto zbad = SimpleFunction::from_levels({{0, 2.0}});
  CHECK_THROWS_AS(decompose(zbad, cut, phi1, sp), std::invalid_argument);
}
