#include "orlicz/young.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace orlicz {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Index of the first infinite value, points.size() if none.
std::size_t first_infinite(const std::vector<std::pair<double, double>>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (is_inf(pts[i].second)) return i;
  return pts.size();
}

double last_finite_slope(const std::vector<std::pair<double, double>>& pts,
                         std::size_t last) {
  if (last == 0) return 0.0;
  return (pts[last].second - pts[last - 1].second) /
         (pts[last].first - pts[last - 1].first);
}

double piecewise_eval(const std::vector<std::pair<double, double>>& pts,
                      double u) {
  std::size_t k_inf = first_infinite(pts);
  if (k_inf < pts.size() && u >= pts[k_inf].first) return kInf;
  std::size_t last = k_inf - 1;  // k_inf >= 1: pts[0] is finite
  if (u <= pts[last].first) {
    // rightmost breakpoint with x <= u
    std::size_t lo = 0, hi = last;
    while (lo < hi) {
      std::size_t mid = (lo + hi + 1) / 2;
      if (pts[mid].first <= u) lo = mid; else hi = mid - 1;
    }
    if (lo == last || pts[lo].first == u) return pts[lo].second;
    double t = (u - pts[lo].first) / (pts[lo + 1].first - pts[lo].first);
    return pts[lo].second + t * (pts[lo + 1].second - pts[lo].second);
  }
  return pts[last].second + last_finite_slope(pts, last) * (u - pts[last].first);
}

double piecewise_inverse(const std::vector<std::pair<double, double>>& pts,
                         double v) {
  std::size_t k_inf = first_infinite(pts);
  std::size_t last = k_inf - 1;
  if (v < pts[last].second) {
    // first breakpoint with value > v; values[0] = 0 <= v
    std::size_t lo = 0, hi = last;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (pts[mid].second > v) hi = mid; else lo = mid + 1;
    }
    double x0 = pts[lo - 1].first, y0 = pts[lo - 1].second;
    double x1 = pts[lo].first, y1 = pts[lo].second;
    return x0 + (v - y0) * (x1 - x0) / (y1 - y0);
  }
  double slope = last_finite_slope(pts, last);
  double cap = (k_inf < pts.size()) ? pts[k_inf].first : kInf;
  if (slope > 0.0) {
    double u = pts[last].first + (v - pts[last].second) / slope;
    return std::min(u, cap);
  }
  return cap;
}

void compute_piecewise_params(YoungForm& f) {
  const auto& pts = f.points;
  std::size_t k_inf = first_infinite(pts);
  std::size_t last = k_inf - 1;
  f.b_phi = (k_inf < pts.size()) ? pts[k_inf].first : kInf;
  f.finite_at_b = (k_inf == pts.size());
  std::size_t z = 0;
  while (z + 1 <= last && pts[z + 1].second == 0.0) ++z;
  if (z < last) {
    f.a_phi = pts[z].first;
  } else {
    // every finite value is zero; the tail slope is zero as well
    f.a_phi = f.b_phi;
  }
}

}  // namespace

YoungFunction::YoungFunction(std::shared_ptr<const YoungForm> f)
    : form_(std::move(f)) {}

YoungFunction YoungFunction::power(double exponent, double scale) {
  require(is_finite(exponent) && exponent >= 1.0, "power: exponent must be >= 1");
  require(is_finite(scale) && scale > 0.0, "power: scale must be positive");
  auto f = std::make_shared<YoungForm>();
  f->tag = YoungTag::Power;
  f->exponent = exponent;
  f->scale = scale;
  f->a_phi = 0.0;
  f->b_phi = kInf;
  f->finite_at_b = true;
  return YoungFunction(std::move(f));
}

YoungFunction YoungFunction::exp_minus_one(double scale) {
  require(is_finite(scale) && scale > 0.0, "expm1: scale must be positive");
  auto f = std::make_shared<YoungForm>();
  f->tag = YoungTag::ExpMinusOne;
  f->scale = scale;
  f->a_phi = 0.0;
  f->b_phi = kInf;
  f->finite_at_b = true;
  return YoungFunction(std::move(f));
}

YoungFunction YoungFunction::linear_above_knee(double knee) {
  require(is_finite(knee) && knee >= 0.0, "knee: knee must be >= 0");
  auto f = std::make_shared<YoungForm>();
  f->tag = YoungTag::LinearAboveKnee;
  f->knee = knee;
  f->a_phi = knee;
  f->b_phi = kInf;
  f->finite_at_b = true;
  return YoungFunction(std::move(f));
}

YoungFunction YoungFunction::identity() {
  auto f = std::make_shared<YoungForm>();
  f->tag = YoungTag::Identity;
  f->a_phi = 0.0;
  f->b_phi = kInf;
  f->finite_at_b = true;
  return YoungFunction(std::move(f));
}

YoungFunction YoungFunction::piecewise(
    std::vector<std::pair<double, double>> points) {
  require(points.size() >= 2, "piecewise: need at least two breakpoints");
  require(points[0].first == 0.0 && points[0].second == 0.0,
          "piecewise: first breakpoint must be (0,0)");
  bool seen_inf = false;
  bool any_positive = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double x = points[i].first, v = points[i].second;
    require(is_finite(x) && x >= 0.0, "piecewise: breakpoints must be finite and >= 0");
    require(!std::isnan(v) && v >= 0.0, "piecewise: values must be >= 0");
    if (i > 0) {
      require(x > points[i - 1].first, "piecewise: breakpoints must be strictly increasing");
      require(v >= points[i - 1].second, "piecewise: values must be nondecreasing");
    }
    if (seen_inf) require(is_inf(v), "piecewise: finite value after an infinite one");
    seen_inf = seen_inf || is_inf(v);
    any_positive = any_positive || v > 0.0;
  }
  require(any_positive, "piecewise: function is identically zero");
  std::size_t k_inf = first_infinite(points);
  double prev_slope = -kInf;
  for (std::size_t i = 1; i < k_inf; ++i) {
    double slope = (points[i].second - points[i - 1].second) /
                   (points[i].first - points[i - 1].first);
    require(slope >= prev_slope - 1e-12 * std::max(1.0, std::abs(prev_slope)),
            "piecewise: slopes must be nondecreasing (convexity)");
    prev_slope = slope;
  }
  auto f = std::make_shared<YoungForm>();
  f->tag = YoungTag::Piecewise;
  f->points = std::move(points);
  compute_piecewise_params(*f);
  return YoungFunction(std::move(f));
}

YoungFunction YoungFunction::dilated(const YoungFunction& inner, double factor) {
  require(is_finite(factor) && factor > 0.0, "dilate: factor must be positive");
  auto f = std::make_shared<YoungForm>();
  f->tag = YoungTag::Dilated;
  if (inner.form().tag == YoungTag::Dilated) {
    f->factor = factor * inner.form().factor;
    f->inner = inner.form().inner;
  } else {
    f->factor = factor;
    f->inner = inner.form_;
  }
  f->a_phi = f->inner->a_phi / f->factor;
  f->b_phi = f->inner->b_phi / f->factor;
  f->finite_at_b = f->inner->finite_at_b;
  return YoungFunction(std::move(f));
}

YoungFunction YoungFunction::cutoff(const YoungFunction& inner, double bound,
                                    double value_at_bound) {
  require(is_finite(bound) && bound > 0.0, "cut: bound must be positive and finite");
  require(!std::isnan(value_at_bound) && value_at_bound >= 0.0,
          "cut: value at bound must be >= 0");
  double limit = inner(bound * (1.0 - 1e-12));
  if (is_inf(limit)) {
    require(is_inf(value_at_bound),
            "cut: inner function is already infinite below the bound");
  } else {
    require(value_at_bound >= limit * (1.0 - 1e-9),
            "cut: value at bound below the inner left limit breaks monotonicity");
  }
  auto f = std::make_shared<YoungForm>();
  f->tag = YoungTag::CutOff;
  f->bound = bound;
  f->value_at_bound = value_at_bound;
  f->inner = inner.form_;
  const YoungForm& in = *f->inner;
  if (in.b_phi < bound) {
    f->b_phi = in.b_phi;
    f->finite_at_b = in.finite_at_b;
  } else {
    f->b_phi = bound;
    f->finite_at_b = is_finite(value_at_bound);
  }
  f->a_phi = std::min(in.a_phi, bound);
  return YoungFunction(std::move(f));
}

namespace {

double eval_form(const YoungForm& f, double u) {
  if (u <= 0.0) return 0.0;
  switch (f.tag) {
    case YoungTag::Power:
      return f.scale * std::pow(u, f.exponent);
    case YoungTag::ExpMinusOne:
      return f.scale * std::expm1(u);
    case YoungTag::LinearAboveKnee:
      return std::max(0.0, u - f.knee);
    case YoungTag::Identity:
      return u;
    case YoungTag::Piecewise:
      return piecewise_eval(f.points, u);
    case YoungTag::Dilated:
      return eval_form(*f.inner, f.factor * u);
    case YoungTag::CutOff:
      if (u < f.bound) return eval_form(*f.inner, u);
      if (u == f.bound) return f.value_at_bound;
      return kInf;
  }
  return 0.0;
}

double inverse_form(const YoungForm& f, double v) {
  if (is_inf(v)) return f.b_phi;
  switch (f.tag) {
    case YoungTag::Power:
      return std::pow(v / f.scale, 1.0 / f.exponent);
    case YoungTag::ExpMinusOne:
      return std::log1p(v / f.scale);
    case YoungTag::LinearAboveKnee:
      return f.knee + v;
    case YoungTag::Identity:
      return v;
    case YoungTag::Piecewise:
      return piecewise_inverse(f.points, v);
    case YoungTag::Dilated:
      return inverse_form(*f.inner, v) / f.factor;
    case YoungTag::CutOff:
      return std::min(inverse_form(*f.inner, v), f.bound);
  }
  return 0.0;
}

}  // namespace

double YoungFunction::operator()(double u) const { return eval_form(*form_, u); }

double YoungFunction::right_inverse(double v) const {
  if (!(v >= 0.0)) throw std::invalid_argument("right_inverse: argument must be >= 0");
  return inverse_form(*form_, v);
}

double YoungFunction::largest_zero() const { return form_->a_phi; }
double YoungFunction::finiteness_bound() const { return form_->b_phi; }
bool YoungFunction::finite_at_bound() const { return form_->finite_at_b; }

YoungFunction YoungFunction::dilate(double factor) const {
  if (factor == 1.0) return *this;
  return dilated(*this, factor);
}

double YoungFunction::fundamental(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("fundamental: measure must be >= 0");
  if (t == 0.0) return 0.0;
  return inv_ext(right_inverse(inv_ext(t)));
}

DegeneracyParams degeneracy_params(const YoungFunction& phi) {
  return {phi.largest_zero(), phi.finiteness_bound(), phi.finite_at_bound()};
}

std::string number_text(double x) {
  if (is_inf(x)) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string YoungFunction::to_text() const {
  const YoungForm& f = *form_;
  switch (f.tag) {
    case YoungTag::Power:
      if (f.scale == 1.0) return "pow(" + number_text(f.exponent) + ")";
      return "pow(" + number_text(f.exponent) + "," + number_text(f.scale) + ")";
    case YoungTag::ExpMinusOne:
      if (f.scale == 1.0) return "expm1()";
      return "expm1(" + number_text(f.scale) + ")";
    case YoungTag::LinearAboveKnee:
      return "knee(" + number_text(f.knee) + ")";
    case YoungTag::Identity:
      return "id";
    case YoungTag::Piecewise: {
      std::string out = "piecewise(";
      for (std::size_t i = 0; i < f.points.size(); ++i) {
        if (i) out += ",";
        out += "(" + number_text(f.points[i].first) + "," +
               number_text(f.points[i].second) + ")";
      }
      return out + ")";
    }
    case YoungTag::Dilated:
      return "dilate(" + YoungFunction(f.inner).to_text() + "," +
             number_text(f.factor) + ")";
    case YoungTag::CutOff:
      return "cut(" + YoungFunction(f.inner).to_text() + "," +
             number_text(f.bound) + "," + number_text(f.value_at_bound) + ")";
  }
  return "id";
}

}  // namespace orlicz
