#include "orlicz/funcdsl.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace orlicz::dsl {

bool operator==(const FuncExpr& a, const FuncExpr& b) {
  if (a.tag != b.tag) return false;
  switch (a.tag) {
    case YoungTag::Power:
      return a.exponent == b.exponent && a.scale == b.scale;
    case YoungTag::ExpMinusOne:
      return a.scale == b.scale;
    case YoungTag::LinearAboveKnee:
      return a.knee == b.knee;
    case YoungTag::Identity:
      return true;
    case YoungTag::Piecewise:
      return a.points == b.points;
    case YoungTag::Dilated:
      return a.factor == b.factor && *a.inner == *b.inner;
    case YoungTag::CutOff:
      return a.bound == b.bound && a.value_at_bound == b.value_at_bound &&
             *a.inner == *b.inner;
  }
  return false;
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  ParseError err;
  bool failed = false;

  bool fail(std::string msg, std::size_t off, std::size_t len = 1) {
    if (!failed) {
      failed = true;
      err = ParseError{std::move(msg), off, len};
    }
    return false;
  }
  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool expect(char c, const char* what) {
    skip_ws();
    if (peek() == c) {
      ++pos;
      return true;
    }
    return fail(std::string("expected '") + c + "' " + what, pos);
  }
  bool number(double* out) {
    skip_ws();
    if (text.substr(pos, 3) == "inf") {
      *out = kInf;
      pos += 3;
      return true;
    }
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    double v = 0.0;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p == first) return fail("expected a number", pos);
    pos += static_cast<std::size_t>(p - first);
    *out = v;
    return true;
  }
  std::string_view ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }
};

bool parse_expr(Parser& ps, FuncExpr& out);

bool parse_pow(Parser& ps, FuncExpr& e) {
  e.tag = YoungTag::Power;
  if (!ps.expect('(', "after pow")) return false;
  if (!ps.number(&e.exponent)) return false;
  ps.skip_ws();
  if (ps.peek() == ',') {
    ++ps.pos;
    if (!ps.number(&e.scale)) return false;
  }
  return ps.expect(')', "to close pow");
}

bool parse_expm1(Parser& ps, FuncExpr& e) {
  e.tag = YoungTag::ExpMinusOne;
  if (!ps.expect('(', "after expm1")) return false;
  ps.skip_ws();
  if (ps.peek() != ')')
    if (!ps.number(&e.scale)) return false;
  return ps.expect(')', "to close expm1");
}

bool parse_knee(Parser& ps, FuncExpr& e) {
  e.tag = YoungTag::LinearAboveKnee;
  if (!ps.expect('(', "after knee")) return false;
  if (!ps.number(&e.knee)) return false;
  return ps.expect(')', "to close knee");
}

bool parse_id(Parser& ps, FuncExpr& e) {
  e.tag = YoungTag::Identity;
  std::size_t save = ps.pos;
  ps.skip_ws();
  if (ps.peek() == '(') {
    ++ps.pos;
    return ps.expect(')', "to close id");
  }
  ps.pos = save;
  return true;
}

bool parse_point(Parser& ps, std::pair<double, double>* pr) {
  if (!ps.expect('(', "to open a point")) return false;
  if (!ps.number(&pr->first)) return false;
  if (!ps.expect(',', "between coordinates")) return false;
  if (!ps.number(&pr->second)) return false;
  return ps.expect(')', "to close a point");
}

bool parse_piecewise(Parser& ps, FuncExpr& e) {
  e.tag = YoungTag::Piecewise;
  if (!ps.expect('(', "after piecewise")) return false;
  for (;;) {
    ps.skip_ws();
    std::size_t off = ps.pos;
    std::pair<double, double> pr;
    if (!parse_point(ps, &pr)) return false;
    if (e.points.empty() && (pr.first != 0.0 || pr.second != 0.0))
      return ps.fail("piecewise must start at (0,0)", off, ps.pos - off);
    e.points.push_back(pr);
    ps.skip_ws();
    if (ps.peek() != ',') break;
    ++ps.pos;
  }
  return ps.expect(')', "to close piecewise");
}

bool parse_dilate(Parser& ps, FuncExpr& e) {
  e.tag = YoungTag::Dilated;
  if (!ps.expect('(', "after dilate")) return false;
  FuncExpr in;
  if (!parse_expr(ps, in)) return false;
  e.inner = std::make_shared<FuncExpr>(std::move(in));
  if (!ps.expect(',', "before the dilation factor")) return false;
  if (!ps.number(&e.factor)) return false;
  return ps.expect(')', "to close dilate");
}

bool parse_cut(Parser& ps, FuncExpr& e) {
  e.tag = YoungTag::CutOff;
  if (!ps.expect('(', "after cut")) return false;
  FuncExpr in;
  if (!parse_expr(ps, in)) return false;
  e.inner = std::make_shared<FuncExpr>(std::move(in));
  if (!ps.expect(',', "before the bound")) return false;
  if (!ps.number(&e.bound)) return false;
  if (!ps.expect(',', "before the value at the bound")) return false;
  if (!ps.number(&e.value_at_bound)) return false;
  return ps.expect(')', "to close cut");
}

using Handler = bool (*)(Parser&, FuncExpr&);

struct Entry {
  std::string_view name;
  Handler fn;
};

const Entry kRegistry[] = {
    {"pow", parse_pow},       {"expm1", parse_expm1},
    {"knee", parse_knee},     {"id", parse_id},
    {"piecewise", parse_piecewise}, {"dilate", parse_dilate},
    {"cut", parse_cut},
};

bool parse_expr(Parser& ps, FuncExpr& out) {
  ps.skip_ws();
  std::size_t off = ps.pos;
  std::string_view name = ps.ident();
  if (name.empty()) return ps.fail("expected a function name", off);
  for (const Entry& en : kRegistry)
    if (en.name == name) return en.fn(ps, out);
  return ps.fail("unknown function '" + std::string(name) + "'", off, name.size());
}

}  // namespace

ParseResult parse(std::string_view text) {
  Parser ps{text, 0, {}, false};
  FuncExpr e;
  ParseResult r;
  if (!parse_expr(ps, e)) {
    r.error = ps.err;
    return r;
  }
  ps.skip_ws();
  if (ps.pos != text.size()) {
    r.error = ParseError{"trailing input", ps.pos, text.size() - ps.pos};
    return r;
  }
  r.expr = std::move(e);
  return r;
}

std::string format(const FuncExpr& e) {
  switch (e.tag) {
    case YoungTag::Power:
      if (e.scale == 1.0) return "pow(" + number_text(e.exponent) + ")";
      return "pow(" + number_text(e.exponent) + "," + number_text(e.scale) + ")";
    case YoungTag::ExpMinusOne:
      if (e.scale == 1.0) return "expm1()";
      return "expm1(" + number_text(e.scale) + ")";
    case YoungTag::LinearAboveKnee:
      return "knee(" + number_text(e.knee) + ")";
    case YoungTag::Identity:
      return "id";
    case YoungTag::Piecewise: {
      std::string out = "piecewise(";
      for (std::size_t i = 0; i < e.points.size(); ++i) {
        if (i) out += ",";
        out += "(" + number_text(e.points[i].first) + "," +
               number_text(e.points[i].second) + ")";
      }
      return out + ")";
    }
    case YoungTag::Dilated:
      return "dilate(" + format(*e.inner) + "," + number_text(e.factor) + ")";
    case YoungTag::CutOff:
      return "cut(" + format(*e.inner) + "," + number_text(e.bound) + "," +
             number_text(e.value_at_bound) + ")";
  }
  return "id";
}

YoungFunction lower(const FuncExpr& e) {
  switch (e.tag) {
    case YoungTag::Power:
      return YoungFunction::power(e.exponent, e.scale);
    case YoungTag::ExpMinusOne:
      return YoungFunction::exp_minus_one(e.scale);
    case YoungTag::LinearAboveKnee:
      return YoungFunction::linear_above_knee(e.knee);
    case YoungTag::Identity:
      return YoungFunction::identity();
    case YoungTag::Piecewise:
      return YoungFunction::piecewise(e.points);
    case YoungTag::Dilated:
      return YoungFunction::dilated(lower(*e.inner), e.factor);
    case YoungTag::CutOff:
      return YoungFunction::cutoff(lower(*e.inner), e.bound, e.value_at_bound);
  }
  throw std::logic_error("lower: unhandled tag");
}

namespace {

FuncExpr lift_form(const YoungForm& f) {
  FuncExpr e;
  e.tag = f.tag;
  e.exponent = f.exponent;
  e.scale = f.scale;
  e.knee = f.knee;
  e.factor = f.factor;
  e.bound = f.bound;
  e.value_at_bound = f.value_at_bound;
  e.points = f.points;
  if (f.inner) e.inner = std::make_shared<FuncExpr>(lift_form(*f.inner));
  return e;
}

}  // namespace

FuncExpr lift(const YoungFunction& f) { return lift_form(f.form()); }

std::string render_caret(std::string_view text, const ParseError& err) {
  std::string out(text);
  out += "\n";
  std::size_t off = std::min(err.offset, text.size());
  out.append(off, ' ');
  std::size_t room = text.size() >= off ? text.size() - off : 0;
  std::size_t len = std::min(std::max<std::size_t>(1, err.length),
                             std::max<std::size_t>(1, room));
  out += "^";
  for (std::size_t i = 1; i < len; ++i) out += "~";
  return out;
}

}  // namespace orlicz::dsl
