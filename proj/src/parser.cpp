#include "stimg/parser.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace stimg {

parse_error::parse_error(const std::string& origin, int line_, int col_,
                         const std::string& what)
    : input_error(origin + ":" + std::to_string(line_) + ":" + std::to_string(col_) +
                  ": " + what),
      line(line_),
      col(col_) {}

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, Comma, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  Lexer(const SourceText& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(src_.origin, cur_.line, cur_.col, msg);
  }

  const std::string& origin() const { return src_.origin; }

  Token expect(Tok kind, const std::string& what) {
    if (cur_.kind != kind) fail("expected " + what);
    return take();
  }

 private:
  void advance() {
    const std::string& s = src_.text;
    while (pos_ < s.size()) {
      char c = s[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s.size() && s[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    cur_.line = line_;
    cur_.col = col_;
    cur_.text.clear();
    if (pos_ >= s.size()) {
      cur_.kind = Tok::End;
      return;
    }
    char c = s[pos_];
    auto single = [&](Tok k) {
      cur_.kind = k;
      cur_.text = c;
      ++pos_;
      ++col_;
    };
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur_.kind = Tok::Int;
      while (pos_ < s.size() && std::isdigit(static_cast<unsigned char>(s[pos_]))) {
        cur_.text += s[pos_++];
        ++col_;
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      cur_.kind = Tok::Ident;
      while (pos_ < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos_])) || s[pos_] == '_')) {
        cur_.text += s[pos_++];
        ++col_;
      }
      return;
    }
    switch (c) {
      case '+': single(Tok::Plus); return;
      case '-': single(Tok::Minus); return;
      case '*': single(Tok::Star); return;
      case '^': single(Tok::Caret); return;
      case '/': single(Tok::Slash); return;
      case '(': single(Tok::LParen); return;
      case ')': single(Tok::RParen); return;
      case ',': single(Tok::Comma); return;
      case '=': single(Tok::Eq); return;
      default:
        throw parse_error(src_.origin, line_, col_,
                          std::string("unexpected character '") + c + "'");
    }
  }

  const SourceText& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token cur_;
};

mpz_class to_mpz(const std::string& digits) { return mpz_class(digits, 10); }

class PolyParser {
 public:
  PolyParser(Lexer& lx, const Ring& ring) : lx_(lx), ring_(ring) {}

  // expr := term (('+'|'-') term)*
  MultiPoly expr() {
    MultiPoly acc = term();
    while (lx_.peek().kind == Tok::Plus || lx_.peek().kind == Tok::Minus) {
      Tok op = lx_.take().kind;
      MultiPoly rhs = term();
      if (op == Tok::Plus)
        acc += rhs;
      else
        acc -= rhs;
    }
    return acc;
  }

 private:
  // term := factor ('*' factor)*
  MultiPoly term() {
    MultiPoly acc = factor();
    while (lx_.peek().kind == Tok::Star) {
      lx_.take();
      acc = acc * factor();
    }
    return acc;
  }

  // factor := '-' factor | power      (unary minus binds looser than ^)
  MultiPoly factor() {
    if (lx_.peek().kind == Tok::Minus) {
      lx_.take();
      return -factor();
    }
    return power();
  }

  // power := primary ('^' INT)*
  MultiPoly power() {
    MultiPoly base = primary();
    while (lx_.peek().kind == Tok::Caret) {
      lx_.take();
      if (lx_.peek().kind == Tok::Minus) lx_.fail("negative exponent");
      Token e = lx_.expect(Tok::Int, "integer exponent");
      mpz_class z = to_mpz(e.text);
      if (!z.fits_sint_p()) lx_.fail("exponent too large");
      base = poly_pow(base, static_cast<int>(z.get_si()));
    }
    return base;
  }

  // primary := INT ['/' INT] | VAR | '(' expr ')'
  MultiPoly primary() {
    const Token& t = lx_.peek();
    switch (t.kind) {
      case Tok::Int: {
        Token n = lx_.take();
        mpz_class num = to_mpz(n.text);
        if (lx_.peek().kind == Tok::Slash) {
          lx_.take();
          Token d = lx_.expect(Tok::Int, "denominator");
          mpz_class den = to_mpz(d.text);
          if (den == 0)
            throw parse_error(lx_.origin(), d.line, d.col, "zero denominator");
          return MultiPoly::constant(ring_, Rational(num, den));
        }
        return MultiPoly::constant(ring_, Rational(num, mpz_class(1)));
      }
      case Tok::Ident: {
        Token v = lx_.take();
        int idx = ring_index(ring_, v.text);
        if (idx < 0)
          throw parse_error(lx_.origin(), v.line, v.col, "unknown variable " + v.text);
        return MultiPoly::variable(ring_, idx);
      }
      case Tok::LParen: {
        lx_.take();
        MultiPoly inner = expr();
        lx_.expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        lx_.fail("expected a number, variable or '('");
    }
  }

  Lexer& lx_;
  const Ring& ring_;
};

Rational rational_from(Lexer& lx) {
  bool neg = false;
  while (lx.peek().kind == Tok::Minus) {
    lx.take();
    neg = !neg;
  }
  Token n = lx.expect(Tok::Int, "integer");
  mpz_class num = to_mpz(n.text);
  mpz_class den(1);
  if (lx.peek().kind == Tok::Slash) {
    lx.take();
    Token d = lx.expect(Tok::Int, "denominator");
    den = to_mpz(d.text);
    if (den == 0) throw parse_error(lx.origin(), d.line, d.col, "zero denominator");
  }
  Rational r{num, den};
  return neg ? -r : r;
}

}  // namespace

MultiPoly parse_poly(const SourceText& src, const Ring& ring) {
  Lexer lx(src);
  PolyParser p(lx, ring);
  MultiPoly out = p.expr();
  if (lx.peek().kind != Tok::End) lx.fail("trailing input after polynomial");
  return out;
}

PolyMap parse_map(const SourceText& src) {
  Lexer lx(src);
  lx.expect(Tok::Ident, "map name");
  lx.expect(Tok::LParen, "'('");
  Token v1 = lx.expect(Tok::Ident, "variable name");
  lx.expect(Tok::Comma, "','");
  Token v2 = lx.expect(Tok::Ident, "variable name");
  lx.expect(Tok::RParen, "')'");
  lx.expect(Tok::Eq, "'='");
  lx.expect(Tok::LParen, "'('");
  if (v1.text == v2.text)
    throw parse_error(src.origin, v2.line, v2.col, "repeated variable name");
  Ring ring = make_ring({v1.text, v2.text});
  PolyParser p(lx, ring);
  MultiPoly first = p.expr();
  if (lx.peek().kind == Tok::RParen)
    lx.fail("map needs exactly two components");
  lx.expect(Tok::Comma, "','");
  MultiPoly second = p.expr();
  if (lx.peek().kind == Tok::Comma)
    lx.fail("map needs exactly two components");
  lx.expect(Tok::RParen, "')'");
  if (lx.peek().kind != Tok::End) lx.fail("trailing input after map");
  return PolyMap(std::move(first), std::move(second));
}

Rational parse_rational(const SourceText& src) {
  Lexer lx(src);
  Rational r = rational_from(lx);
  if (lx.peek().kind != Tok::End) lx.fail("trailing input after rational");
  return r;
}

Point parse_point(const SourceText& src) {
  Lexer lx(src);
  bool parens = lx.peek().kind == Tok::LParen;
  if (parens) lx.take();
  Rational x = rational_from(lx);
  lx.expect(Tok::Comma, "','");
  Rational y = rational_from(lx);
  if (parens) lx.expect(Tok::RParen, "')'");
  if (lx.peek().kind != Tok::End) lx.fail("trailing input after point");
  return Point{std::move(x), std::move(y)};
}

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

long long parse_nonneg(const std::string& s, const std::string& origin, int line) {
  if (s.empty()) throw parse_error(origin, line, 1, "expected a number");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw parse_error(origin, line, 1, "expected a nonnegative integer, got " + s);
  return std::stoll(s);
}

setdyn::Node parse_node(const std::string& s, const std::string& origin, int line) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t colon = s.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, colon - start));
    start = colon + 1;
  }
  if (parts.size() == 2 && parts[0] == "core" && !parts[1].empty())
    return setdyn::Node::core(parts[1]);
  if (parts.size() == 3 && parts[0] == "ray")
    return setdyn::Node::ray_at(static_cast<int>(parse_nonneg(parts[1], origin, line)),
                                parse_nonneg(parts[2], origin, line));
  throw parse_error(origin, line, 1, "bad node syntax '" + s + "'");
}

}  // namespace

setdyn::CofiniteSelfMap parse_selfmap_spec(const SourceText& src) {
  int ray_count = 0;
  std::vector<std::string> cores;
  std::map<setdyn::Node, setdyn::Node> overrides;

  std::istringstream is(src.text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    auto words = split_ws(line);
    if (words.empty()) continue;
    const std::string& head = words[0];
    if (head == "rays:") {
      if (words.size() != 2)
        throw parse_error(src.origin, lineno, 1, "rays: expects one number");
      ray_count = static_cast<int>(parse_nonneg(words[1], src.origin, lineno));
    } else if (head == "core:") {
      for (size_t i = 1; i < words.size(); ++i) cores.push_back(words[i]);
    } else if (head == "map:") {
      if (words.size() != 4 || words[2] != "->")
        throw parse_error(src.origin, lineno, 1, "map: expects '<node> -> <node>'");
      setdyn::Node from = parse_node(words[1], src.origin, lineno);
      setdyn::Node to = parse_node(words[3], src.origin, lineno);
      if (!overrides.emplace(from, to).second)
        throw parse_error(src.origin, lineno, 1,
                          "duplicate map rule for " + setdyn::to_string(from));
    } else {
      throw parse_error(src.origin, lineno, 1, "unknown directive '" + head + "'");
    }
  }
  return setdyn::CofiniteSelfMap(std::move(cores), ray_count, std::move(overrides));
}

namespace {

std::string monomial_body(const Ring& ring, const Monomial& m, const Rational& coeff) {
  std::ostringstream os;
  bool printed = false;
  Rational a = abs(coeff);
  if (m.total_degree() == 0 || !a.is_one()) {
    os << a.str();
    printed = true;
  }
  for (size_t v = 0; v < m.exps.size(); ++v) {
    if (m.exps[v] == 0) continue;
    if (printed) os << "*";
    os << (*ring)[v];
    if (m.exps[v] > 1) os << "^" << m.exps[v];
    printed = true;
  }
  return os.str();
}

}  // namespace

std::string print_canonical(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // terms() is graded-lex ascending; print highest first
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    os << monomial_body(p.ring(), m, c);
  }
  return os.str();
}

std::string print_canonical(const PolyMap& f) {
  std::ostringstream os;
  os << "f(" << (*f.ring())[0] << "," << (*f.ring())[1] << ") = ("
     << print_canonical(f.p()) << ", " << print_canonical(f.q()) << ")";
  return os.str();
}

std::string print_canonical(const Point& p) {
  return "(" + p.x.str() + "," + p.y.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
  return os << print_canonical(p);
}

}  // namespace stimg
