#include <cmath>
#include <vector>

#include "doctest.h"
#include "orlicz/extended.hpp"
#include "orlicz/young.hpp"

using namespace orlicz;

TEST_CASE("power evaluates scale * u^p and validates parameters") {
  auto p2 = YoungFunction::power(2.0);
  CHECK(p2(0.0) == 0.0);
  CHECK(p2(3.0) == doctest::Approx(9.0));
  auto half = YoungFunction::power(3.0, 0.5);
  CHECK(half(2.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(YoungFunction::power(0.5), std::invalid_argument);
  CHECK_THROWS_AS(YoungFunction::power(2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(YoungFunction::power(2.0, -1.0), std::invalid_argument);
}

TEST_CASE("exp_minus_one and knee and identity") {
  auto e = YoungFunction::exp_minus_one();
  CHECK(e(1.0) == doctest::Approx(std::expm1(1.0)));
  CHECK(e(0.0) == 0.0);
  auto e2 = YoungFunction::exp_minus_one(2.0);
  CHECK(e2(1.0) == doctest::Approx(2.0 * std::expm1(1.0)));

  auto k = YoungFunction::linear_above_knee(1.0);
  CHECK(k(0.5) == 0.0);
  CHECK(k(1.0) == 0.0);
  CHECK(k(2.5) == doctest::Approx(1.5));
  CHECK(k.largest_zero() == 1.0);

  auto id = YoungFunction::identity();
  CHECK(id(7.25) == 7.25);
  CHECK(id.largest_zero() == 0.0);
  CHECK(is_inf(id.finiteness_bound()));
}

TEST_CASE("piecewise interpolates, extrapolates the last slope, honors inf") {
  auto f = YoungFunction::piecewise({{0, 0}, {1, 0}, {2, 1}, {3, 3}});
  CHECK(f(0.5) == 0.0);
  CHECK(f(1.5) == doctest::Approx(0.5));
  CHECK(f(2.5) == doctest::Approx(2.0));
  CHECK(f(5.0) == doctest::Approx(3.0 + 2.0 * 2.0));  // final slope 2 continues
  CHECK(f.largest_zero() == 1.0);

  auto g = YoungFunction::piecewise({{0, 0}, {1, 1}, {2, kInf}});
  CHECK(g(1.5) == doctest::Approx(1.5));  // slope 1 continues up to the jump
  CHECK(is_inf(g(2.0)));
  CHECK(g.finiteness_bound() == 2.0);
  CHECK_FALSE(g.finite_at_bound());

  // L^inf shape: zero then a jump
  auto h = YoungFunction::piecewise({{0, 0}, {1, 0}, {2, kInf}});
  CHECK(h.largest_zero() == 2.0);
  CHECK(h.finiteness_bound() == 2.0);

  CHECK_THROWS_AS(YoungFunction::piecewise({{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(YoungFunction::piecewise({{0, 1}, {1, 2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(YoungFunction::piecewise({{0, 0}, {1, 0}}),
                  std::invalid_argument);  // identically zero
  CHECK_THROWS_AS(YoungFunction::piecewise({{0, 0}, {1, 2}, {2, 3}}),
                  std::invalid_argument);  // concave corner
  CHECK_THROWS_AS(YoungFunction::piecewise({{0, 0}, {1, kInf}, {2, 1}}),
                  std::invalid_argument);  // finite after infinite
}

TEST_CASE("dilate composes multiplicatively and shifts degeneracy bounds") {
  auto p2 = YoungFunction::power(2.0);
  auto d = p2.dilate(3.0);
  CHECK(d(2.0) == doctest::Approx(36.0));
  auto dd = d.dilate(0.5);  // nested dilations collapse to one factor
  CHECK(dd(2.0) == doctest::Approx(9.0));
  CHECK(dd.form().tag == YoungTag::Dilated);
  CHECK(dd.form().inner->tag == YoungTag::Power);

  auto c = YoungFunction::cutoff(p2, 2.0, kInf);
  auto dc = c.dilate(4.0);
  CHECK(dc.finiteness_bound() == doctest::Approx(0.5));
  auto k = YoungFunction::linear_above_knee(1.0).dilate(2.0);
  CHECK(k.largest_zero() == doctest::Approx(0.5));
  CHECK(k(0.4) == 0.0);
  CHECK(k(1.0) == doctest::Approx(1.0));
}

TEST_CASE("cutoff evaluates inner below, the stored value at, inf above") {
  auto p2 = YoungFunction::power(2.0);
  auto c = YoungFunction::cutoff(p2, 1.0, kInf);
  CHECK(c(0.5) == doctest::Approx(0.25));
  CHECK(is_inf(c(1.0)));
  CHECK(is_inf(c(1.5)));
  CHECK(c.finiteness_bound() == 1.0);
  CHECK_FALSE(c.finite_at_bound());

  auto cf = YoungFunction::cutoff(p2, 1.0, 2.0);
  CHECK(cf(1.0) == 2.0);  // jump at the bound is allowed
  CHECK(cf.finite_at_bound());

  // value below the left limit would break monotonicity
  CHECK_THROWS_AS(YoungFunction::cutoff(p2, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(YoungFunction::cutoff(p2, 0.0, 1.0), std::invalid_argument);

  // cutting beyond an existing bound keeps the tighter one
  auto inner = YoungFunction::cutoff(p2, 1.0, kInf);
  auto outer = YoungFunction::cutoff(inner, 3.0, kInf);
  CHECK(outer.finiteness_bound() == 1.0);
}

TEST_CASE("right inverse is the right-continuous inverse") {
  auto p2 = YoungFunction::power(2.0);
  CHECK(p2.right_inverse(9.0) == doctest::Approx(3.0));
  CHECK(p2.right_inverse(0.0) == 0.0);
  CHECK(is_inf(p2.right_inverse(kInf)));

  auto k = YoungFunction::linear_above_knee(1.0);
  CHECK(k.right_inverse(0.0) == doctest::Approx(1.0));  // jumps over the zero set
  CHECK(k.right_inverse(2.0) == doctest::Approx(3.0));

  auto e = YoungFunction::exp_minus_one(2.0);
  CHECK(e.right_inverse(2.0 * std::expm1(1.5)) == doctest::Approx(1.5));

  auto c = YoungFunction::cutoff(p2, 1.0, kInf);
  CHECK(c.right_inverse(0.25) == doctest::Approx(0.5));
  CHECK(c.right_inverse(5.0) == 1.0);  // capped at the finiteness bound
  CHECK(c.right_inverse(kInf) == 1.0);

  auto pw = YoungFunction::piecewise({{0, 0}, {1, 0}, {2, 1}, {3, kInf}});
  CHECK(pw.right_inverse(0.5) == doctest::Approx(1.5));
  CHECK(pw.right_inverse(100.0) == 3.0);

  CHECK_THROWS_AS(p2.right_inverse(-1.0), std::invalid_argument);
}

TEST_CASE("inverse composition identities on the strictly increasing part") {
  std::vector<YoungFunction> phis = {
      YoungFunction::power(2.0), YoungFunction::power(1.5, 0.25),
      YoungFunction::exp_minus_one(),
      YoungFunction::piecewise({{0, 0}, {1, 1}, {2, 4}, {4, 16}})};
  for (const auto& phi : phis) {
    for (double u : {0.5, 1.0, 1.7, 3.0}) {
      double v = phi(u);
      CHECK(phi.right_inverse(v) == doctest::Approx(u).epsilon(1e-12));
      CHECK(phi(phi.right_inverse(v)) == doctest::Approx(v).epsilon(1e-12));
    }
  }
}

TEST_CASE("fundamental function is 1 over the inverse at 1/t") {
  auto p2 = YoungFunction::power(2.0);
  CHECK(p2.fundamental(0.25) == doctest::Approx(0.5));
  CHECK(p2.fundamental(0.0) == 0.0);
  CHECK(is_inf(p2.fundamental(kInf)));

  auto id = YoungFunction::identity();
  CHECK(id.fundamental(0.1) == doctest::Approx(0.1));

  // bounded inverse keeps the fundamental function away from zero
  auto c = YoungFunction::cutoff(p2, 1.0, kInf);
  CHECK(c.fundamental(1e-8) == doctest::Approx(1.0));

  auto d = degeneracy_params(c);
  CHECK(d.largest_zero == 0.0);
  CHECK(d.finiteness_bound == 1.0);
  CHECK_FALSE(d.finite_at_bound);
}

TEST_CASE("text form is canonical and number_text round-trips") {
  CHECK(YoungFunction::power(2.0).to_text() == "pow(2)");
  CHECK(YoungFunction::power(2.5, 0.5).to_text() == "pow(2.5,0.5)");
  CHECK(YoungFunction::exp_minus_one().to_text() == "expm1()");
  CHECK(YoungFunction::identity().to_text() == "id");
  CHECK(YoungFunction::linear_above_knee(1.0).to_text() == "knee(1)");
  auto c = YoungFunction::cutoff(YoungFunction::power(2.0), 1.0, kInf);
  CHECK(c.to_text() == "cut(pow(2),1,inf)");
  CHECK(c.dilate(3.0).to_text() == "dilate(cut(pow(2),1,inf),3)");
  CHECK(YoungFunction::piecewise({{0, 0}, {1, 0.5}, {2, kInf}}).to_text() ==
        "piecewise((0,0),(1,0.5),(2,inf))");
  CHECK(number_text(0.1) == "0.1");
  CHECK(number_text(kInf) == "inf");
}

TEST_CASE("extended arithmetic conventions") {
  CHECK(is_inf(add_ext(1.0, kInf)));
  CHECK(add_ext(1.0, 2.0) == 3.0);
  CHECK(mul_ext(0.0, kInf) == 0.0);  // measure-theory convention
  CHECK(is_inf(mul_ext(2.0, kInf)));
  CHECK(is_inf(inv_ext(0.0)));
  CHECK(inv_ext(kInf) == 0.0);
  CHECK(sub_for_sup(kInf, 5.0) == kInf);
  CHECK(sub_for_sup(3.0, 5.0) == -2.0);
}
