#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orlicz/young.hpp"

namespace orlicz::dsl {

// Constructor-syntax expression tree. Mirrors the factories on
// YoungFunction one to one; `lower` turns a tree into the function and
// performs the full semantic validation, `format` prints the canonical
// text, and parse(format(e)) reproduces e exactly.
//
//   pow(p) | pow(p,c) | expm1() | expm1(c) | knee(k) | id
//   piecewise((0,0),(x1,y1),...)
//   dilate(expr,a) | cut(expr,b,vb)
//
// Numbers are plain decimals; "inf" is accepted where a value may be
// infinite (piecewise ordinates, the cut value).
struct FuncExpr {
  YoungTag tag = YoungTag::Identity;
  double exponent = 1.0;
  double scale = 1.0;
  double knee = 0.0;
  double factor = 1.0;
  double bound = 0.0;
  double value_at_bound = 0.0;
  std::vector<std::pair<double, double>> points;
  std::shared_ptr<const FuncExpr> inner;
};

bool operator==(const FuncExpr& a, const FuncExpr& b);
inline bool operator!=(const FuncExpr& a, const FuncExpr& b) { return !(a == b); }

struct ParseError {
  std::string message;
  std::size_t offset = 0;  // byte position in the input
  std::size_t length = 1;  // extent of the offending token
};

struct ParseResult {
  std::optional<FuncExpr> expr;
  std::optional<ParseError> error;
  explicit operator bool() const { return expr.has_value(); }
};

// Structural parse. Only shape errors are reported here (unknown head,
// malformed number, missing parenthesis, a piecewise list not starting at
// (0,0)); value-level constraints are checked by lower().
ParseResult parse(std::string_view text);

std::string format(const FuncExpr& e);

// Throws std::invalid_argument when the expression violates a factory
// precondition (nonconvex piecewise points, exponent < 1, ...).
YoungFunction lower(const FuncExpr& e);

FuncExpr lift(const YoungFunction& f);

// Two-line snippet: the input, then a caret line marking the error span.
std::string render_caret(std::string_view text, const ParseError& err);

}  // namespace orlicz::dsl
