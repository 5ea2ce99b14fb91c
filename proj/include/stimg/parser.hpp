#pragma once

#include <string>
#include <vector>

#include "stimg/polymap.hpp"
#include "stimg/setdyn.hpp"

namespace stimg {

struct SourceText {
  std::string text;
  std::string origin = "<inline>";
};

struct parse_error : input_error {
  parse_error(const std::string& origin, int line, int col, const std::string& what);
  int line;
  int col;
};

// Grammar: integer and rational (n/d) literals, variables, + - * ^ with
// nonnegative integer exponents, parentheses. Multiplication is always
// explicit; unary minus binds looser than ^.
MultiPoly parse_poly(const SourceText& src, const Ring& ring);

// `f(x,y) = (<poly>, <poly>)`; the header names the two ring variables.
PolyMap parse_map(const SourceText& src);

Rational parse_rational(const SourceText& src);

// `a,b` with rational components; surrounding parentheses allowed.
Point parse_point(const SourceText& src);

// Line-oriented self-map presentation:
//   rays: <r>
//   core: a b c
//   map: <node> -> <node>
// with node syntax core:a / ray:i:n. `#` starts a comment.
setdyn::CofiniteSelfMap parse_selfmap_spec(const SourceText& src);

// Deterministic graded-lex form; reparses to an equal value.
std::string print_canonical(const MultiPoly& p);
std::string print_canonical(const PolyMap& f);
std::string print_canonical(const Point& p);

}  // namespace stimg
