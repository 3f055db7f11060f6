#include "berk/text.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "berk/errors.hpp"

namespace berk {

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected,
                       const std::string& detail)
    : Error(ErrorKind::kParse,
            "parse error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                ": " + detail + (expected.empty() ? "" : " (expected " + join(expected, ", ") + ")")),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

struct Token {
  enum class Kind { kInt, kIdent, kSymbol, kEnd };
  Kind kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l0 = line;
    int c0 = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::kInt, std::string(s.substr(i, j - i)), l0, c0});
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::kIdent, std::string(s.substr(i, j - i)), l0, c0});
      advance(j - i);
    } else if (std::string_view("+-*/^():,;=").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::kSymbol, std::string(1, c), l0, c0});
      advance(1);
    } else {
      throw ParseError(l0, c0, {}, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Kind::kEnd, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_symbol(char c) const {
    return peek().kind == Token::Kind::kSymbol && peek().text[0] == c;
  }
  bool at_ident(std::string_view name) const {
    return peek().kind == Token::Kind::kIdent && peek().text == name;
  }
  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail) const {
    throw ParseError(peek().line, peek().column, std::move(expected), detail);
  }
  void expect_symbol(char c) {
    if (!at_symbol(c)) fail({std::string("'") + c + "'"}, "unexpected " + describe(peek()));
    ++pos_;
  }
  void expect_ident(std::string_view name) {
    if (!at_ident(name)) fail({std::string(name)}, "unexpected " + describe(peek()));
    ++pos_;
  }
  void expect_end() {
    if (peek().kind != Token::Kind::kEnd) fail({"end of input"}, "trailing " + describe(peek()));
  }

  static std::string describe(const Token& t) {
    if (t.kind == Token::Kind::kEnd) return "end of input";
    return "'" + t.text + "'";
  }

  ParsedExpr expr() {
    ParsedExpr lhs = term();
    while (at_symbol('+') || at_symbol('-')) {
      const Token& op = peek();
      ++pos_;
      ParsedExpr node;
      node.kind = op.text[0] == '+' ? ParsedExpr::Kind::kAdd : ParsedExpr::Kind::kSub;
      node.line = op.line;
      node.column = op.column;
      node.kids.push_back(std::move(lhs));
      node.kids.push_back(term());
      lhs = std::move(node);
    }
    return lhs;
  }

  std::int64_t integer(bool allow_sign) {
    bool neg = false;
    if (allow_sign && (at_symbol('-') || at_symbol('+'))) {
      neg = at_symbol('-');
      ++pos_;
    }
    if (peek().kind != Token::Kind::kInt) fail({"integer"}, "unexpected " + describe(peek()));
    Integer v(peek().text);
    if (!v.fits_slong_p()) fail({"integer"}, "integer too large");
    ++pos_;
    return neg ? -v.get_si() : v.get_si();
  }

 private:
  ParsedExpr term() {
    ParsedExpr lhs = unary();
    while (at_symbol('*') || at_symbol('/')) {
      const Token& op = peek();
      ++pos_;
      ParsedExpr node;
      node.kind = op.text[0] == '*' ? ParsedExpr::Kind::kMul : ParsedExpr::Kind::kDiv;
      node.line = op.line;
      node.column = op.column;
      node.kids.push_back(std::move(lhs));
      node.kids.push_back(unary());
      lhs = std::move(node);
    }
    return lhs;
  }

  ParsedExpr unary() {
    if (at_symbol('-') || at_symbol('+')) {
      const Token& op = peek();
      bool neg = op.text[0] == '-';
      ++pos_;
      ParsedExpr inner = unary();
      if (!neg) return inner;
      ParsedExpr node;
      node.kind = ParsedExpr::Kind::kNeg;
      node.line = op.line;
      node.column = op.column;
      node.kids.push_back(std::move(inner));
      return node;
    }
    return power();
  }

  ParsedExpr power() {
    ParsedExpr base = atom();
    if (!at_symbol('^')) return base;
    const Token& op = peek();
    ++pos_;
    ParsedExpr node;
    node.kind = ParsedExpr::Kind::kPow;
    node.line = op.line;
    node.column = op.column;
    if (at_symbol('(')) {
      ++pos_;
      node.exponent = integer(true);
      expect_symbol(')');
    } else {
      node.exponent = integer(true);
    }
    node.kids.push_back(std::move(base));
    return node;
  }

  ParsedExpr atom() {
    const Token& tok = peek();
    ParsedExpr node;
    node.line = tok.line;
    node.column = tok.column;
    switch (tok.kind) {
      case Token::Kind::kInt:
        node.kind = ParsedExpr::Kind::kNumber;
        node.number = Integer(tok.text);
        ++pos_;
        return node;
      case Token::Kind::kIdent:
        if (tok.text == "t") {
          node.kind = ParsedExpr::Kind::kT;
          ++pos_;
          return node;
        }
        if (tok.text.size() > 1 && tok.text[0] == 'X' &&
            std::all_of(tok.text.begin() + 1, tok.text.end(),
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
          node.kind = ParsedExpr::Kind::kVar;
          node.var = std::stoul(tok.text.substr(1));
          ++pos_;
          return node;
        }
        fail({"integer", "t", "X<n>", "'('"}, "unknown identifier '" + tok.text + "'");
      case Token::Kind::kSymbol:
        if (tok.text == "(") {
          ++pos_;
          ParsedExpr inner = expr();
          expect_symbol(')');
          return inner;
        }
        [[fallthrough]];
      case Token::Kind::kEnd:
        break;
    }
    fail({"integer", "t", "X<n>", "'('"}, "unexpected " + describe(tok));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;

 public:
  std::size_t position() const { return pos_; }
};

std::size_t max_var(const ParsedExpr& e) {
  std::size_t m = e.kind == ParsedExpr::Kind::kVar ? e.var + 1 : 0;
  for (const auto& k : e.kids) m = std::max(m, max_var(k));
  return m;
}

[[noreturn]] void semantic_error(const ParsedExpr& e, std::vector<std::string> expected,
                                 const std::string& what) {
  throw ParseError(e.line, e.column, std::move(expected), what);
}

// Evaluates to a polynomial; divisors and negative powers must be scalars.
Poly eval(const ParsedExpr& e, std::size_t nvars) {
  using K = ParsedExpr::Kind;
  auto as_scalar = [&](const Poly& p, const ParsedExpr& where) -> Scalar {
    for (const auto& [ex, c] : p.terms())
      if (total_degree(ex) != 0) semantic_error(where, {"scalar expression"}, "cannot divide by a polynomial in X");
    return p.coeff(Exponents(nvars, 0));
  };
  switch (e.kind) {
    case K::kNumber: return Poly::constant(nvars, Scalar(Rational(e.number)));
    case K::kT: return Poly::constant(nvars, Scalar::t());
    case K::kVar:
      if (e.var >= nvars) semantic_error(e, {}, "variable X" + std::to_string(e.var) + " outside the ambient space");
      return Poly::variable(nvars, e.var);
    case K::kAdd: return eval(e.kids[0], nvars) + eval(e.kids[1], nvars);
    case K::kSub: return eval(e.kids[0], nvars) - eval(e.kids[1], nvars);
    case K::kMul: return eval(e.kids[0], nvars) * eval(e.kids[1], nvars);
    case K::kNeg: return -eval(e.kids[0], nvars);
    case K::kDiv: {
      Scalar d = as_scalar(eval(e.kids[1], nvars), e.kids[1]);
      if (d.is_zero()) semantic_error(e.kids[1], {"nonzero divisor"}, "division by zero");
      return (Scalar(1) / d) * eval(e.kids[0], nvars);
    }
    case K::kPow: {
      Poly base = eval(e.kids[0], nvars);
      if (e.exponent < 0) {
        Scalar b = as_scalar(base, e.kids[0]);
        if (b.is_zero()) semantic_error(e, {"nonzero base"}, "negative power of zero");
        return Poly::constant(nvars, b.pow(e.exponent));
      }
      if (e.exponent > 100000) semantic_error(e, {}, "exponent too large");
      Poly r = Poly::constant(nvars, Scalar(1));
      for (std::int64_t k = 0; k < e.exponent; ++k) r = r * base;
      return r;
    }
  }
  return Poly(nvars);
}

Scalar eval_scalar(const ParsedExpr& e) {
  if (max_var(e) > 0) semantic_error(e, {"scalar expression"}, "unexpected variable X in a scalar");
  Poly p = eval(e, 1);
  return p.coeff(Exponents{0});
}

Scalar scalar_here(Parser& p) { return eval_scalar(p.expr()); }

}  // namespace

ParsedExpr parse_expr(std::string_view text) {
  Parser p(text);
  ParsedExpr e = p.expr();
  p.expect_end();
  return e;
}

Scalar parse_scalar(std::string_view text) { return eval_scalar(parse_expr(text)); }

Poly parse_poly(std::string_view text, std::optional<std::size_t> nvars) {
  ParsedExpr e = parse_expr(text);
  std::size_t n = nvars.value_or(std::max<std::size_t>(1, max_var(e)));
  return eval(e, n);
}

BerkPoint parse_point(std::string_view text, std::optional<std::size_t> nvars) {
  Parser p(text);
  BerkPoint result = BerkPoint::gauss(1);
  if (p.at_ident("gauss")) {
    p.expect_ident("gauss");
    std::size_t n = 0;
    if (p.at_symbol('(')) {
      p.expect_symbol('(');
      std::int64_t k = p.integer(false);
      if (k < 1) p.fail({"positive integer"}, "dimension must be positive");
      n = static_cast<std::size_t>(k);
      p.expect_symbol(')');
    } else if (nvars) {
      n = *nvars;
    } else {
      p.fail({"'('"}, "gauss needs its number of coordinates, e.g. gauss(3)");
    }
    result = BerkPoint::gauss(n);
  } else if (p.at_ident("disc")) {
    p.expect_ident("disc");
    p.expect_symbol('(');
    p.expect_ident("center");
    p.expect_symbol('=');
    p.expect_symbol('(');
    std::vector<Scalar> center{scalar_here(p)};
    while (p.at_symbol(',')) {
      p.expect_symbol(',');
      center.push_back(scalar_here(p));
    }
    p.expect_symbol(')');
    p.expect_symbol(';');
    p.expect_ident("rho");
    p.expect_symbol('=');
    p.expect_symbol('(');
    std::vector<std::int64_t> rho{p.integer(true)};
    while (p.at_symbol(',')) {
      p.expect_symbol(',');
      rho.push_back(p.integer(true));
    }
    p.expect_symbol(')');
    p.expect_symbol(')');
    if (rho.size() != center.size()) p.fail({}, "center and rho lengths differ");
    result = BerkPoint::polydisc(std::move(center), std::move(rho));
  } else {
    p.expect_symbol('(');
    std::vector<Scalar> coords{scalar_here(p)};
    while (p.at_symbol(':')) {
      p.expect_symbol(':');
      coords.push_back(scalar_here(p));
    }
    p.expect_symbol(')');
    if (coords.size() < 2) p.fail({"':'"}, "a projective point needs at least two coordinates");
    result = BerkPoint::type_one(std::move(coords));
  }
  p.expect_end();
  if (nvars && result.nvars() != *nvars)
    throw DomainError("ArityMismatch", "point has " + std::to_string(result.nvars()) +
                                           " coordinates, expected " + std::to_string(*nvars));
  return result;
}

Rational parse_rational(std::string_view text) {
  Scalar s = parse_scalar(text);
  if (!s.is_constant()) throw ParseError(1, 1, {"rational number"}, "expected a rational, got a function of t");
  return s.constant_value();
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (auto part : split(text, ',')) out.push_back(parse_rational(part));
  return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  for (auto part : split(text, ',')) {
    Parser p(part);
    out.push_back(p.integer(true));
    p.expect_end();
  }
  return out;
}

// --------------------------------------------------------------- format

std::string format_rational_short(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

std::string format_tpoly(const TPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    const Rational& c = p.coeffs()[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    if (mono.empty())
      out += format_rational_short(mag);
    else if (mag == 1)
      out += mono;
    else
      out += format_rational_short(mag) + "*" + mono;
  }
  return out;
}

std::string format_scalar(const Scalar& x) {
  if (x.den().is_one()) return format_tpoly(x.num());
  return "(" + format_tpoly(x.num()) + ")/(" + format_tpoly(x.den()) + ")";
}

namespace {

// Graded reverse lexicographic: higher degree first, then the monomial
// with the smaller exponent in the last differing variable.
bool grevlex_greater(const Exponents& a, const Exponents& b) {
  unsigned da = total_degree(a);
  unsigned db = total_degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

std::string format_monomial(const Exponents& e) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    std::string v = "X" + std::to_string(i);
    if (e[i] > 1) v += "^" + std::to_string(e[i]);
    parts.push_back(v);
  }
  return join(parts, "*");
}

template <typename Map, typename CoeffFmt>
std::string format_terms(const Map& terms, CoeffFmt coeff_fmt) {
  if (terms.empty()) return "0";
  std::vector<const typename Map::value_type*> order;
  for (const auto& kv : terms) order.push_back(&kv);
  std::sort(order.begin(), order.end(),
            [](auto* x, auto* y) { return grevlex_greater(x->first, y->first); });
  std::string out;
  bool first = true;
  for (auto* kv : order) {
    auto [negative, coeff] = coeff_fmt(kv->second);  // coeff "" means unit
    std::string mono = format_monomial(kv->first);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (mono.empty())
      out += coeff.empty() ? "1" : coeff;
    else if (coeff.empty())
      out += mono;
    else
      out += coeff + "*" + mono;
  }
  return out;
}

}  // namespace

std::string format_poly(const Poly& f) {
  return format_terms(f.terms(), [](const Scalar& c) -> std::pair<bool, std::string> {
    if (c.is_constant()) {
      Rational q = c.constant_value();
      Rational mag = abs(q);
      std::string s = mag == 1 ? "" : format_rational_short(mag);
      return {q < 0, s};
    }
    return {false, "(" + format_scalar(c) + ")"};
  });
}

std::string format_residue_poly(const ResiduePoly& f) {
  return format_terms(f.terms(), [&](const ResidueScalar& c) -> std::pair<bool, std::string> {
    if (!f.field().is_rational()) return {false, c == 1 ? "" : format_rational_short(c)};
    Rational mag = abs(c);
    return {c < 0, mag == 1 ? "" : format_rational_short(mag)};
  });
}

std::string format_point(const BerkPoint& z) {
  if (z.is_type_one()) {
    std::vector<std::string> parts;
    for (const auto& c : z.as_type_one().coords) parts.push_back(format_scalar(c));
    return "(" + join(parts, " : ") + ")";
  }
  const auto& d = z.as_polydisc();
  bool gauss = std::all_of(d.center.begin(), d.center.end(), [](const Scalar& x) { return x.is_zero(); }) &&
               std::all_of(d.rho.begin(), d.rho.end(), [](std::int64_t r) { return r == 0; });
  if (gauss) return "gauss(" + std::to_string(d.center.size()) + ")";
  std::vector<std::string> cs;
  std::vector<std::string> rs;
  for (const auto& c : d.center) cs.push_back(format_scalar(c));
  for (auto r : d.rho) rs.push_back(std::to_string(r));
  return "disc(center=(" + join(cs, ", ") + "); rho=(" + join(rs, ", ") + "))";
}

std::string format_residue_point(const ResidueProjPoint& p) {
  std::vector<std::string> parts;
  for (const auto& c : p.coords()) parts.push_back(format_rational_short(c));
  return "(" + join(parts, " : ") + ")";
}

std::string format_decimal(const Rational& q, unsigned digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Integer num = abs(q.get_num()) * scale;
  const Integer& den = q.get_den();
  Integer quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Integer twice = rem * 2;
  if (twice > den || (twice == den && mpz_odd_p(quot.get_mpz_t()))) quot += 1;
  std::string s = quot.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = q < 0 && quot != 0 ? "-" : "";
  out += s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  return out;
}

}  // namespace berk
