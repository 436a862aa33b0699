#include "cosetgauge/field_expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <vector>

namespace cosetgauge {

namespace {

ExprNodePtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

ExprNodePtr num_node(double v) {
  ExprNode n;
  n.kind = ExprNode::Kind::Number;
  n.value = v;
  return make_node(std::move(n));
}

ExprNodePtr var_node(VarKind kind, int index) {
  ExprNode n;
  n.kind = ExprNode::Kind::Variable;
  n.var_kind = kind;
  n.var_index = index;
  return make_node(std::move(n));
}

ExprNodePtr unary_node(ExprNode::Kind k, ExprNodePtr c) {
  ExprNode n;
  n.kind = k;
  n.lhs = std::move(c);
  return make_node(std::move(n));
}

ExprNodePtr bin_node(ExprNode::Kind k, ExprNodePtr a, ExprNodePtr b) {
  ExprNode n;
  n.kind = k;
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return make_node(std::move(n));
}

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
  Kind kind;
  std::size_t offset;
  double value = 0.0;
  std::string text;
};

const char* token_name(Token::Kind k) {
  switch (k) {
    case Token::Kind::Number: return "number";
    case Token::Kind::Ident: return "identifier";
    case Token::Kind::Plus: return "'+'";
    case Token::Kind::Minus: return "'-'";
    case Token::Kind::Star: return "'*'";
    case Token::Kind::Slash: return "'/'";
    case Token::Kind::Caret: return "'^'";
    case Token::Kind::LParen: return "'('";
    case Token::Kind::RParen: return "')'";
    case Token::Kind::Comma: return "','";
    case Token::Kind::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') { ++i; continue; }
    std::size_t start = i;
    auto push = [&](Token::Kind k) { out.push_back({k, start, 0.0, std::string(1, c)}); ++i; };
    switch (c) {
      case '+': push(Token::Kind::Plus); continue;
      case '-': push(Token::Kind::Minus); continue;
      case '*': push(Token::Kind::Star); continue;
      case '/': push(Token::Kind::Slash); continue;
      case '^': push(Token::Kind::Caret); continue;
      case '(': push(Token::Kind::LParen); continue;
      case ')': push(Token::Kind::RParen); continue;
      case ',': push(Token::Kind::Comma); continue;
      default: break;
    }
    if ((c >= '0' && c <= '9') || (c == '.' && i + 1 < n && text[i + 1] >= '0' && text[i + 1] <= '9')) {
      std::size_t j = i;
      while (j < n && text[j] >= '0' && text[j] <= '9') ++j;
      if (j < n && text[j] == '.') {
        ++j;
        while (j < n && text[j] >= '0' && text[j] <= '9') ++j;
      }
      if (j < n && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < n && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < n && text[k] >= '0' && text[k] <= '9') {
          while (k < n && text[k] >= '0' && text[k] <= '9') ++k;
          j = k;
        }
      }
      std::string s(text.substr(i, j - i));
      out.push_back({Token::Kind::Number, start, std::strtod(s.c_str(), nullptr), s});
      i = j;
      continue;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t j = i;
      while (j < n && ((text[j] >= 'a' && text[j] <= 'z') || (text[j] >= 'A' && text[j] <= 'Z') ||
                       (text[j] >= '0' && text[j] <= '9') || text[j] == '_'))
        ++j;
      out.push_back({Token::Kind::Ident, start, 0.0, std::string(text.substr(i, j - i))});
      i = j;
      continue;
    }
    throw SyntaxError("unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(i),
                      i, {"token"});
  }
  out.push_back({Token::Kind::End, n, 0.0, ""});
  return out;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.
//
//   expr   := term { ('+'|'-') term }
//   term   := unary { ('*'|'/') unary }
//   unary  := '-' unary | power
//   power  := atom [ '^' unary ]
//   atom   := NUMBER | VAR | FUNC '(' expr { ',' expr } ')' | '(' expr ')'

struct Parser {
  const std::vector<Token>& toks;
  std::size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  Token take() { return toks[pos++]; }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    const Token& t = peek();
    std::string msg = "syntax error at offset " + std::to_string(t.offset) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += " or ";
      msg += expected[i];
    }
    msg += ", found ";
    msg += token_name(t.kind);
    throw SyntaxError(msg, t.offset, expected);
  }

  void expect(Token::Kind k, const char* what) {
    if (peek().kind != k) fail({what});
    ++pos;
  }

  ExprNodePtr parse_expr() {
    ExprNodePtr lhs = parse_term();
    while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
      auto op = take().kind == Token::Kind::Plus ? ExprNode::Kind::Add : ExprNode::Kind::Sub;
      lhs = bin_node(op, std::move(lhs), parse_term());
    }
    return lhs;
  }

  ExprNodePtr parse_term() {
    ExprNodePtr lhs = parse_unary();
    while (peek().kind == Token::Kind::Star || peek().kind == Token::Kind::Slash) {
      auto op = take().kind == Token::Kind::Star ? ExprNode::Kind::Mul : ExprNode::Kind::Div;
      lhs = bin_node(op, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  ExprNodePtr parse_unary() {
    if (peek().kind == Token::Kind::Minus) {
      take();
      return unary_node(ExprNode::Kind::Neg, parse_unary());
    }
    return parse_power();
  }

  ExprNodePtr parse_power() {
    ExprNodePtr base = parse_atom();
    if (peek().kind == Token::Kind::Caret) {
      take();
      // right-associative; exponent may itself carry a sign or power
      return bin_node(ExprNode::Kind::Pow, std::move(base), parse_unary());
    }
    return base;
  }

  ExprNodePtr parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Number:
        take();
        return num_node(t.value);
      case Token::Kind::LParen: {
        take();
        ExprNodePtr inner = parse_expr();
        expect(Token::Kind::RParen, "')'");
        return inner;
      }
      case Token::Kind::Ident:
        return parse_ident();
      default:
        fail({"number", "identifier", "'('", "'-'"});
    }
  }

  ExprNodePtr parse_ident() {
    Token t = take();
    const std::string& s = t.text;
    ExprNode::Kind fn;
    if (s == "sin") fn = ExprNode::Kind::Sin;
    else if (s == "cos") fn = ExprNode::Kind::Cos;
    else if (s == "exp") fn = ExprNode::Kind::Exp;
    else return parse_variable(t);

    expect(Token::Kind::LParen, "'('");
    std::vector<ExprNodePtr> args;
    args.push_back(parse_expr());
    while (peek().kind == Token::Kind::Comma) {
      take();
      args.push_back(parse_expr());
    }
    expect(Token::Kind::RParen, "')'");
    if (args.size() != 1)
      throw ArityError(s + " takes 1 argument, got " + std::to_string(args.size()) +
                       " (offset " + std::to_string(t.offset) + ")");
    return unary_node(fn, std::move(args[0]));
  }

  ExprNodePtr parse_variable(const Token& t) {
    const std::string& s = t.text;
    if (s.size() >= 2 && (s[0] == 'x' || s[0] == 's')) {
      bool digits = true;
      for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') { digits = false; break; }
      if (digits) {
        long idx = std::strtol(s.c_str() + 1, nullptr, 10);
        if (idx >= 1)
          return var_node(s[0] == 'x' ? VarKind::X : VarKind::Sigma, static_cast<int>(idx - 1));
      }
    }
    throw UnknownIdentifier("unknown identifier '" + s + "' at offset " + std::to_string(t.offset));
  }
};

// ---------------------------------------------------------------------------
// Printer: minimal parentheses, canonical number formatting.

int precedence(ExprNode::Kind k) {
  switch (k) {
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub: return 1;
    case ExprNode::Kind::Mul:
    case ExprNode::Kind::Div: return 2;
    case ExprNode::Kind::Neg: return 3;
    case ExprNode::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void print_node(const ExprNode& n, std::string& out);

void print_child(const ExprNodePtr& c, int parent_prec, bool need_parens_on_tie, std::string& out) {
  bool parens = precedence(c->kind) < parent_prec ||
                (need_parens_on_tie && precedence(c->kind) == parent_prec);
  if (parens) out += '(';
  print_node(*c, out);
  if (parens) out += ')';
}

void print_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case ExprNode::Kind::Number:
      out += format_number(n.value);
      return;
    case ExprNode::Kind::Variable:
      out += (n.var_kind == VarKind::X ? 'x' : 's');
      out += std::to_string(n.var_index + 1);
      return;
    case ExprNode::Kind::Neg:
      out += '-';
      print_child(n.lhs, 3, false, out);
      return;
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub: {
      print_child(n.lhs, 1, false, out);
      out += (n.kind == ExprNode::Kind::Add ? " + " : " - ");
      print_child(n.rhs, 1, true, out);  // left-assoc: parenthesize equal-precedence right child
      return;
    }
    case ExprNode::Kind::Mul:
    case ExprNode::Kind::Div: {
      print_child(n.lhs, 2, false, out);
      out += (n.kind == ExprNode::Kind::Mul ? "*" : "/");
      print_child(n.rhs, 2, true, out);
      return;
    }
    case ExprNode::Kind::Pow: {
      print_child(n.lhs, 5, false, out);  // base must be an atom
      out += '^';
      print_child(n.rhs, 3, false, out);  // exponent is a unary
      return;
    }
    case ExprNode::Kind::Sin: out += "sin("; print_node(*n.lhs, out); out += ')'; return;
    case ExprNode::Kind::Cos: out += "cos("; print_node(*n.lhs, out); out += ')'; return;
    case ExprNode::Kind::Exp: out += "exp("; print_node(*n.lhs, out); out += ')'; return;
  }
}

// ---------------------------------------------------------------------------
// Evaluator: deterministic AST-order tree walk.

double check_finite(double v) {
  if (!std::isfinite(v)) throw NonFinite("non-finite value in expression evaluation");
  return v;
}

double eval_node(const ExprNode& n, const EvalPoint& p) {
  switch (n.kind) {
    case ExprNode::Kind::Number:
      return n.value;
    case ExprNode::Kind::Variable: {
      const Vector& v = (n.var_kind == VarKind::X) ? p.x : p.sigma;
      if (n.var_index >= v.size())
        throw EvalError(std::string("variable ") + (n.var_kind == VarKind::X ? "x" : "s") +
                        std::to_string(n.var_index + 1) + " out of range for evaluation point");
      return v[n.var_index];
    }
    case ExprNode::Kind::Neg:
      return -eval_node(*n.lhs, p);
    case ExprNode::Kind::Add:
      return check_finite(eval_node(*n.lhs, p) + eval_node(*n.rhs, p));
    case ExprNode::Kind::Sub:
      return check_finite(eval_node(*n.lhs, p) - eval_node(*n.rhs, p));
    case ExprNode::Kind::Mul:
      return check_finite(eval_node(*n.lhs, p) * eval_node(*n.rhs, p));
    case ExprNode::Kind::Div: {
      double a = eval_node(*n.lhs, p);
      double b = eval_node(*n.rhs, p);
      if (std::abs(b) < 1e-300) throw DivisionByZero("division by zero");
      return check_finite(a / b);
    }
    case ExprNode::Kind::Pow: {
      double b = eval_node(*n.lhs, p);
      double e = eval_node(*n.rhs, p);
      double r = std::nearbyint(e);
      if (std::abs(e - r) > 1e-9)
        throw EvalError("power exponent must be an integer, got " + std::to_string(e));
      if (r < 0 && std::abs(b) < 1e-300) throw DivisionByZero("zero base with negative exponent");
      return check_finite(integer_pow(b, static_cast<long long>(r)));
    }
    case ExprNode::Kind::Sin: return check_finite(std::sin(eval_node(*n.lhs, p)));
    case ExprNode::Kind::Cos: return check_finite(std::cos(eval_node(*n.lhs, p)));
    case ExprNode::Kind::Exp: return check_finite(std::exp(eval_node(*n.lhs, p)));
  }
  throw EvalError("corrupt expression node");
}

int max_index_node(const ExprNode& n, VarKind kind) {
  int m = 0;
  if (n.kind == ExprNode::Kind::Variable && n.var_kind == kind) m = n.var_index + 1;
  if (n.lhs) m = std::max(m, max_index_node(*n.lhs, kind));
  if (n.rhs) m = std::max(m, max_index_node(*n.rhs, kind));
  return m;
}

bool equal_nodes(const ExprNodePtr& a, const ExprNodePtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprNode::Kind::Number: {
      // bitwise comparison so that 0.0 and -0.0 are distinct
      return std::memcmp(&a->value, &b->value, sizeof(double)) == 0;
    }
    case ExprNode::Kind::Variable:
      return a->var_kind == b->var_kind && a->var_index == b->var_index;
    default:
      return equal_nodes(a->lhs, b->lhs) && equal_nodes(a->rhs, b->rhs);
  }
}

}  // namespace

double integer_pow(double base, long long e) {
  if (e < 0) return 1.0 / integer_pow(base, -e);
  double r = 1.0, p = base;
  while (e > 0) {
    if (e & 1) r *= p;
    p *= p;
    e >>= 1;
  }
  return r;
}

FieldExpr FieldExpr::parse(std::string_view text) {
  std::vector<Token> toks = lex(text);
  Parser parser{toks};
  ExprNodePtr root = parser.parse_expr();
  if (parser.peek().kind != Token::Kind::End) parser.fail({"operator", "end of input"});
  return FieldExpr(std::move(root));
}

FieldExpr FieldExpr::number(double v) { return FieldExpr(num_node(v)); }
FieldExpr FieldExpr::variable(VarKind kind, int index) { return FieldExpr(var_node(kind, index)); }

std::string FieldExpr::print() const {
  if (!root_) return "0";
  std::string out;
  print_node(*root_, out);
  return out;
}

double FieldExpr::eval(const EvalPoint& p) const {
  if (!root_) return 0.0;
  return eval_node(*root_, p);
}

int FieldExpr::max_index(VarKind kind) const {
  return root_ ? max_index_node(*root_, kind) : 0;
}

bool FieldExpr::is_zero_literal() const {
  return !root_ || (root_->kind == ExprNode::Kind::Number && root_->value == 0.0);
}

bool operator==(const FieldExpr& a, const FieldExpr& b) {
  if (!a.root_ || !b.root_) {
    return a.is_zero_literal() && b.is_zero_literal();
  }
  return equal_nodes(a.root_, b.root_);
}

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
  return FieldExpr(bin_node(ExprNode::Kind::Add, a.root() ? a.root() : num_node(0.0),
                            b.root() ? b.root() : num_node(0.0)));
}
FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) {
  return FieldExpr(bin_node(ExprNode::Kind::Sub, a.root() ? a.root() : num_node(0.0),
                            b.root() ? b.root() : num_node(0.0)));
}
FieldExpr operator*(const FieldExpr& a, const FieldExpr& b) {
  return FieldExpr(bin_node(ExprNode::Kind::Mul, a.root() ? a.root() : num_node(0.0),
                            b.root() ? b.root() : num_node(0.0)));
}
FieldExpr operator/(const FieldExpr& a, const FieldExpr& b) {
  return FieldExpr(bin_node(ExprNode::Kind::Div, a.root() ? a.root() : num_node(0.0),
                            b.root() ? b.root() : num_node(0.0)));
}
FieldExpr operator-(const FieldExpr& a) {
  return FieldExpr(unary_node(ExprNode::Kind::Neg, a.root() ? a.root() : num_node(0.0)));
}
FieldExpr sin(const FieldExpr& a) {
  return FieldExpr(unary_node(ExprNode::Kind::Sin, a.root() ? a.root() : num_node(0.0)));
}
FieldExpr cos(const FieldExpr& a) {
  return FieldExpr(unary_node(ExprNode::Kind::Cos, a.root() ? a.root() : num_node(0.0)));
}
FieldExpr exp(const FieldExpr& a) {
  return FieldExpr(unary_node(ExprNode::Kind::Exp, a.root() ? a.root() : num_node(0.0)));
}
FieldExpr pow(const FieldExpr& base, int exponent) {
  ExprNodePtr e = exponent >= 0
      ? num_node(static_cast<double>(exponent))
      : unary_node(ExprNode::Kind::Neg, num_node(static_cast<double>(-exponent)));
  return FieldExpr(bin_node(ExprNode::Kind::Pow, base.root() ? base.root() : num_node(0.0), std::move(e)));
}

double diff_numeric(const FieldExpr& expr, const EvalPoint& p, VarKind kind, int index,
                    const FdOptions& opts) {
  auto central = [&](double h) {
    EvalPoint q = p;
    Vector& v = (kind == VarKind::X) ? q.x : q.sigma;
    if (index >= v.size()) throw EvalError("diff_numeric: variable index out of range");
    const double orig = v[index];
    v[index] = orig + h;
    double fp = expr.eval(q);
    v[index] = orig - h;
    double fm = expr.eval(q);
    v[index] = orig;
    double d = (fp - fm) / (2.0 * h);
    if (!std::isfinite(d)) throw NonFinite("non-finite derivative");
    return d;
  };
  double d1 = central(opts.step);
  if (!opts.richardson) return d1;
  double d2 = central(opts.step / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace cosetgauge
