#pragma once

// Parser for rational functions of z.
//
//   rational := expr                          (denominator 1)
//             | expr '/' expr                 (the only division allowed)
//   expr     := term { ('+' | '-') term }
//   term     := unary { ['*'] unary }         (juxtaposition multiplies: 2z, (z+1)(z-1))
//   unary    := ('-' | '+') unary | power
//   power    := primary [ '^' unary ]         (exponent: constant non-negative integer)
//   primary  := number | 'z' | '(' expr ')'
//
// When the denominator is a product of powers of constants, linear factors and
// irreducible quadratics, its factorization is extracted exactly so numeric
// root finding can be skipped.

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zinv/error.hpp"
#include "zinv/factorize.hpp"
#include "zinv/format.hpp"
#include "zinv/polycore.hpp"
#include "zinv/rational.hpp"

namespace zinv {

struct SourceSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
  int line = 1;
  int column = 1;
};

enum class NodeKind { number, var, neg, add, sub, mul, div, pow };

struct ExprNode {
  NodeKind kind;
  double value = 0.0;  // number
  int lhs = -1;        // operand of neg, left operand otherwise
  int rhs = -1;
  SourceSpan span;
};

/// Nodes stored in an arena; children are indices into `nodes`.
struct ExprAst {
  std::vector<ExprNode> nodes;
  int root = -1;

  const ExprNode& operator[](int i) const { return nodes[static_cast<std::size_t>(i)]; }
};

struct ParsedRational {
  RationalFunction rational;
  std::optional<FactoredDenominator> factored;
  RealPoly numerator;    // as written, before normalization
  RealPoly denominator;  // as written, before normalization
  ExprAst ast;
};

namespace detail {

enum class Tok { number, z, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  double value = 0.0;
  SourceSpan span;
};

inline std::string tok_name(Tok t) {
  switch (t) {
    case Tok::number: return "number";
    case Tok::z: return "'z'";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::caret: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::end: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const SourceSpan start = here();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::end, 0.0, start});
        return out;
      }
      const char c = text_[pos_];
      if ((c >= '0' && c <= '9') || c == '.') {
        out.push_back(number());
        continue;
      }
      Tok kind;
      switch (c) {
        case 'z': kind = Tok::z; break;
        case '+': kind = Tok::plus; break;
        case '-': kind = Tok::minus; break;
        case '*': kind = Tok::star; break;
        case '/': kind = Tok::slash; break;
        case '^': kind = Tok::caret; break;
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        default:
          if (std::isalpha(static_cast<unsigned char>(c)))
            throw ParseError(std::string("unknown symbol '") + c + "'; only the variable z is allowed", start.line,
                             start.column);
          throw ParseError(std::string("unexpected character '") + c + "'", start.line, start.column);
      }
      advance();
      SourceSpan span = start;
      span.length = 1;
      out.push_back({kind, 0.0, span});
    }
  }

 private:
  SourceSpan here() const { return {pos_, 0, line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  Token number() {
    SourceSpan span = here();
    const std::size_t begin = pos_;
    const auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      advance();
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t save = pos_;
      const int save_col = col_;
      advance();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits();
      } else {
        pos_ = save;
        col_ = save_col;
      }
    }
    span.length = pos_ - begin;
    const std::string_view lit = text_.substr(begin, span.length);
    double v = 0.0;
    const auto res = std::from_chars(lit.data(), lit.data() + lit.size(), v);
    if (res.ec != std::errc() || res.ptr != lit.data() + lit.size())
      throw ParseError("malformed number '" + std::string(lit) + "'", span.line, span.column);
    return {Tok::number, v, span};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprAst parse() {
    ast_.root = rational();
    expect(Tok::end, {"operator", tok_name(Tok::end)});
    return std::move(ast_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, const std::vector<std::string>& expected) const {
    throw ParseError(msg, peek().span.line, peek().span.column, expected);
  }

  void expect(Tok t, const std::vector<std::string>& expected) {
    if (peek().kind != t) fail("unexpected " + tok_name(peek().kind), expected);
    ++pos_;
  }

  int add(NodeKind kind, SourceSpan span, int lhs = -1, int rhs = -1, double value = 0.0) {
    ast_.nodes.push_back({kind, value, lhs, rhs, span});
    return static_cast<int>(ast_.nodes.size()) - 1;
  }

  SourceSpan join(int a, int b) const {
    SourceSpan s = ast_[a].span;
    const SourceSpan& e = ast_[b].span;
    s.length = e.offset + e.length - s.offset;
    return s;
  }

  int rational() {
    const int root = expr();
    check_division(root, true);
    return root;
  }

  /// Only the root may be a quotient, and its operands must be division-free.
  void check_division(int i, bool top) const {
    const ExprNode& n = ast_[i];
    if (n.kind == NodeKind::div) {
      if (!top) throw ParseError("division is only allowed as the outermost operation", n.span.line, n.span.column);
      if (ast_[n.lhs].kind == NodeKind::div) {
        const SourceSpan& at = ast_[n.lhs].span;
        throw ParseError("more than one top-level '/'", at.line, at.column);
      }
      check_division(n.lhs, false);
      check_division(n.rhs, false);
      return;
    }
    if (n.lhs >= 0) check_division(n.lhs, false);
    if (n.rhs >= 0) check_division(n.rhs, false);
  }

  int expr() {
    int lhs = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const NodeKind k = take().kind == Tok::plus ? NodeKind::add : NodeKind::sub;
      const int rhs = term();
      lhs = add(k, join(lhs, rhs), lhs, rhs);
    }
    return lhs;
  }

  int term() {
    int lhs = unary();
    for (;;) {
      const Tok t = peek().kind;
      NodeKind k = NodeKind::mul;
      if (t == Tok::star || t == Tok::slash) {
        if (t == Tok::slash) k = NodeKind::div;
        take();
      } else if (t != Tok::number && t != Tok::z && t != Tok::lparen) {
        return lhs;
      }
      const int rhs = unary();
      lhs = add(k, join(lhs, rhs), lhs, rhs);
    }
  }

  int unary() {
    if (peek().kind == Tok::minus || peek().kind == Tok::plus) {
      const Token op = take();
      const int operand = unary();
      if (op.kind == Tok::plus) return operand;
      SourceSpan s = op.span;
      s.length = ast_[operand].span.offset + ast_[operand].span.length - s.offset;
      return add(NodeKind::neg, s, operand);
    }
    return power();
  }

  int power() {
    const int base = primary();
    if (peek().kind != Tok::caret) return base;
    take();
    const int exponent = unary();
    return add(NodeKind::pow, join(base, exponent), base, exponent);
  }

  int primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: {
        const Token tok = take();
        return add(NodeKind::number, tok.span, -1, -1, tok.value);
      }
      case Tok::z: {
        const Token tok = take();
        return add(NodeKind::var, tok.span);
      }
      case Tok::lparen: {
        take();
        const int inner = expr();
        expect(Tok::rparen, {tok_name(Tok::rparen)});
        return inner;
      }
      default:
        fail("unexpected " + tok_name(t.kind), {tok_name(Tok::number), tok_name(Tok::z), tok_name(Tok::lparen)});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ExprAst ast_;
};

inline int exponent_value(const ExprAst& ast, int node);

inline RealPoly to_poly(const ExprAst& ast, int i) {
  const ExprNode& n = ast[i];
  switch (n.kind) {
    case NodeKind::number: return RealPoly::constant(n.value);
    case NodeKind::var: return RealPoly::monomial(1.0, 1);
    case NodeKind::neg: return -to_poly(ast, n.lhs);
    case NodeKind::add: return to_poly(ast, n.lhs) + to_poly(ast, n.rhs);
    case NodeKind::sub: return to_poly(ast, n.lhs) - to_poly(ast, n.rhs);
    case NodeKind::mul: return to_poly(ast, n.lhs) * to_poly(ast, n.rhs);
    case NodeKind::pow: return pow(to_poly(ast, n.lhs), exponent_value(ast, n.rhs));
    case NodeKind::div: break;
  }
  throw ParseError("division is only allowed as the outermost operation", n.span.line, n.span.column);
}

/// Exponents must be constant non-negative integers.
inline int exponent_value(const ExprAst& ast, int node) {
  const ExprNode& n = ast[node];
  const RealPoly p = to_poly(ast, node);
  if (p.degree() > 0) throw ParseError("exponent must not depend on z", n.span.line, n.span.column);
  const double v = p.coeff(0);
  if (v < 0) throw ParseError("negative exponent", n.span.line, n.span.column);
  if (v != std::floor(v) || v > 1000) throw ParseError("exponent must be a non-negative integer", n.span.line, n.span.column);
  return static_cast<int>(v);
}

struct Factor {
  int node;
  int exponent;
};

inline void collect_factors(const ExprAst& ast, int i, int exponent, std::vector<Factor>& out, double& sign) {
  const ExprNode& n = ast[i];
  if (n.kind == NodeKind::mul) {
    collect_factors(ast, n.lhs, exponent, out, sign);
    collect_factors(ast, n.rhs, exponent, out, sign);
  } else if (n.kind == NodeKind::neg) {
    if (exponent % 2 == 1) sign = -sign;
    collect_factors(ast, n.lhs, exponent, out, sign);
  } else if (n.kind == NodeKind::pow) {
    collect_factors(ast, n.lhs, exponent * exponent_value(ast, n.rhs), out, sign);
  } else {
    out.push_back({i, exponent});
  }
}

/// b > 0 with a^2 + b^2 reproducing c exactly when a neighbouring double allows it.
inline double snap_imaginary(double a, double c, double b) {
  double best = b;
  double best_err = std::abs(a * a + b * b - c);
  double lo = b, hi = b;
  for (int i = 0; i < 8 && best_err != 0.0; ++i) {
    lo = std::nextafter(lo, 0.0);
    hi = std::nextafter(hi, 2.0 * hi + 1.0);
    for (double cand : {lo, hi}) {
      const double err = std::abs(a * a + cand * cand - c);
      if (err < best_err) {
        best = cand;
        best_err = err;
      }
    }
  }
  return best;
}

inline std::optional<FactoredDenominator> extract_factors(const ExprAst& ast, int den) {
  std::vector<Factor> factors;
  double sign = 1.0;
  collect_factors(ast, den, 1, factors, sign);
  const bool single = factors.size() == 1 && factors[0].exponent == 1;

  FactoredDenominator f;
  f.scale = sign;
  for (const auto& [node, e] : factors) {
    if (e == 0) continue;
    const RealPoly p = to_poly(ast, node);
    const ExprNode& n = ast[node];
    switch (p.degree()) {
      case kZeroDegree:
        throw ParseError("zero denominator", n.span.line, n.span.column);
      case 0:
        f.scale *= std::pow(p.coeff(0), e);
        break;
      case 1: {
        const double r = -p.coeff(0) / p.coeff(1) + 0.0;
        f.scale *= std::pow(p.coeff(1), e);
        if (r == 0.0) {
          f.origin_mult += e;
        } else {
          auto it = std::find_if(f.linears.begin(), f.linears.end(), [&](const auto& l) { return l.r == r; });
          if (it == f.linears.end())
            f.linears.push_back({r, e});
          else
            it->u += e;
        }
        break;
      }
      case 2: {
        const double c0 = p.coeff(0), c1 = p.coeff(1), c2 = p.coeff(2);
        const double disc = c1 * c1 - 4.0 * c0 * c2;
        if (disc >= 0.0) {
          if (single) return std::nullopt;
          throw ParseError("factor is reducible; supply linear factors", n.span.line, n.span.column);
        }
        const double a = -c1 / (2.0 * c2) + 0.0;  // no negative zero
        const double b = snap_imaginary(a, c0 / c2, std::sqrt(-disc) / (2.0 * std::abs(c2)));
        f.scale *= std::pow(c2, e);
        auto it = std::find_if(f.quadratics.begin(), f.quadratics.end(),
                               [&](const auto& q) { return q.a == a && q.b == b; });
        if (it == f.quadratics.end())
          f.quadratics.push_back({a, b, e});
        else
          it->k += e;
        break;
      }
      default:
        return std::nullopt;
    }
  }
  return f;
}

}  // namespace detail

inline ExprAst parse_ast(std::string_view text) {
  return detail::Parser(detail::Lexer(text).run()).parse();
}

/// Parses "N(z)" or "N(z)/D(z)".
inline ParsedRational parse_rational_expr(std::string_view text) {
  ExprAst ast = parse_ast(text);
  const ExprNode& root = ast[ast.root];
  int num_node = ast.root;
  int den_node = -1;
  if (root.kind == NodeKind::div) {
    num_node = root.lhs;
    den_node = root.rhs;
  }
  RealPoly num = detail::to_poly(ast, num_node);
  RealPoly den = den_node < 0 ? RealPoly::constant(1.0) : detail::to_poly(ast, den_node);
  if (den.is_zero()) {
    const SourceSpan& s = ast[den_node].span;
    throw ParseError("zero denominator", s.line, s.column);
  }
  std::optional<FactoredDenominator> factored;
  if (den_node >= 0 && den.degree() >= 1) factored = detail::extract_factors(ast, den_node);
  RationalFunction x(num, den);
  return {std::move(x), std::move(factored), std::move(num), std::move(den), std::move(ast)};
}

/// Text that parse_rational_expr reads back to the same coefficients.
inline std::string to_expression(const RealPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = 0; i <= p.degree(); ++i) {
    const double c = p.coeff(i);
    if (c == 0.0) continue;
    std::string mag = format_exact(std::abs(c));
    std::string mono = i == 0 ? mag : (i == 1 ? mag + "*z" : mag + "*z^" + std::to_string(i));
    if (out.empty())
      out = (c < 0 ? "-" : "") + mono;
    else
      out += (c < 0 ? " - " : " + ") + mono;
  }
  return out;
}

inline std::string to_expression(const RationalFunction& x) {
  return "(" + to_expression(x.num()) + ")/(" + to_expression(x.den()) + ")";
}

}  // namespace zinv
