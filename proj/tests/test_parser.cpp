#include <doctest.h>

#include "testutil.hpp"

using namespace stimg;
using namespace testutil;

TEST_CASE("parses the worked example map") {
  PolyMap f = example6();
  // hand expansion of x - 2(xy+1) - y(xy+1)^2 and -1 - y(xy+1)
  MultiPoly u = poly("x*y + 1");
  MultiPoly p = poly("x") - poly("2") * u - poly("y") * u * u;
  MultiPoly q = poly("0") - poly("1") - poly("y") * u;
  CHECK(f.p() == p);
  CHECK(f.q() == q);
  CHECK(f.p() == poly("-x^2*y^3 - 2*x*y^2 - 2*x*y + x - y - 2"));
  CHECK(f.q() == poly("-x*y^2 - y - 1"));
}

TEST_CASE("zero and constants") {
  CHECK(poly("0").is_zero());
  CHECK(print_canonical(poly("0")) == "0");
  CHECK(poly("3/6") == MultiPoly::constant(ring_xy(), Rational(1, 2)));
}

TEST_CASE("canonical printing") {
  CHECK(print_canonical(poly("1 + 2*x*y + x^2*y^2")) == "x^2*y^2 + 2*x*y + 1");
  CHECK(print_canonical(poly("x - y")) == "-y + x");  // later variable dominates ties
  CHECK(print_canonical(poly("-x^2 + 3/2*x - 1")) == "-x^2 + 3/2*x - 1");
  CHECK(print_canonical(Point{Rational(-2), Rational(1, 2)}) == "(-2,1/2)");
}

TEST_CASE("round trips") {
  Rng r(71);
  for (int i = 0; i < 120; ++i) {
    MultiPoly p = random_poly(r, 4, 7);
    CHECK(parse_poly(SourceText{print_canonical(p)}, ring_xy()) == p);
  }
  for (int i = 0; i < 40; ++i) {
    PolyMap f = random_small_map(r, 3);
    PolyMap g = parse_map(SourceText{print_canonical(f)});
    CHECK(f == g);
  }
  PolyMap f = example6();
  CHECK(parse_map(SourceText{print_canonical(f)}) == f);
  Point p{Rational(-2), Rational(1, 2)};
  CHECK(parse_point(SourceText{print_canonical(p)}) == p);
}

TEST_CASE("positioned parse errors") {
  CHECK_THROWS_AS(poly("(x^2"), parse_error);
  CHECK_THROWS_AS(poly("x^-2"), parse_error);  // negative exponent
  CHECK_THROWS_AS(poly("2 x"), parse_error);   // implicit multiplication
  CHECK_THROWS_AS(poly("1/0"), parse_error);
  CHECK_THROWS_AS(poly("z + 1"), parse_error);  // unknown variable
  CHECK_THROWS_AS(parse_map(SourceText{"f(x,y) = (x)"}), parse_error);
  CHECK_THROWS_AS(parse_map(SourceText{"f(x,y) = (x, y, x)"}), parse_error);
  CHECK_THROWS_AS(parse_map(SourceText{"f(x,x) = (x, x)"}), parse_error);

  try {
    parse_poly(SourceText{"x +\n (y", "probe"}, ring_xy());
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("probe:2:") != std::string::npos);
  }
}

TEST_CASE("precedence") {
  CHECK(poly("-x^2") == poly("0") - poly("x^2"));        // minus binds looser than ^
  CHECK(poly("2*x^2") == poly("2") * poly("x") * poly("x"));
  CHECK(poly("x - 2*y + 1") == poly("x") - poly("2")*poly("y") + poly("1"));
  CHECK(poly("(x+y)^2") == poly("x^2 + 2*x*y + y^2"));
}

TEST_CASE("comments and whitespace are insignificant") {
  MultiPoly p = parse_poly(SourceText{"x # trailing words\n + y"}, ring_xy());
  CHECK(p == poly("x + y"));
}

TEST_CASE("rational and point literals") {
  CHECK(parse_rational(SourceText{"-7/14"}) == Rational(-1, 2));
  CHECK(parse_point(SourceText{"-2,1/2"}) == (Point{Rational(-2), Rational(1, 2)}));
  CHECK(parse_point(SourceText{"(3,0)"}) == pt(3, 0));
  CHECK_THROWS_AS(parse_point(SourceText{"1;2"}), parse_error);
}

TEST_CASE("self-map spec format") {
  SourceText merge{"# comment line\nrays: 2\nmap: ray:1:0 -> ray:0:1\n", "merge"};
  setdyn::CofiniteSelfMap spec = parse_selfmap_spec(merge);
  CHECK(spec.ray_count() == 2);
  CHECK(spec.core_labels().empty());
  CHECK(spec.overrides().size() == 1);
  CHECK(setdyn::apply(spec, setdyn::Node::ray_at(1, 0)) == setdyn::Node::ray_at(0, 1));

  SourceText cores{"core: a b\nmap: core:a -> core:b\nmap: core:b -> core:b\n"};
  setdyn::CofiniteSelfMap cspec = parse_selfmap_spec(cores);
  CHECK(cspec.core_labels().size() == 2);

  CHECK_THROWS_AS(parse_selfmap_spec(SourceText{"rays: x\n"}), parse_error);
  CHECK_THROWS_AS(parse_selfmap_spec(SourceText{"weird: 1\n"}), parse_error);
  CHECK_THROWS_AS(parse_selfmap_spec(SourceText{"rays: 1\nmap: ray:0:0 -> ray:0:2\nmap: ray:0:0 -> ray:0:3\n"}),
                  parse_error);
  // missing rule for a core node
  CHECK_THROWS_AS(parse_selfmap_spec(SourceText{"core: a\n"}), input_error);
  // override onto a missing ray
  CHECK_THROWS_AS(parse_selfmap_spec(SourceText{"rays: 1\nmap: ray:0:0 -> ray:3:0\n"}),
                  input_error);
}
