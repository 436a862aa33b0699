#pragma once

// Expression DSL for coefficient fields: variables x1..xD (base) and
// s1..sF (fibre), real literals, + - * / unary minus, integer powers,
// and sin/cos/exp.  Grammar is documented in docs/expr_grammar.md.

#include <memory>
#include <string>
#include <string_view>

#include "cosetgauge/errors.hpp"
#include "cosetgauge/types.hpp"

namespace cosetgauge {

enum class VarKind { X, Sigma };

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind {
    Number, Variable,
    Neg, Add, Sub, Mul, Div, Pow,
    Sin, Cos, Exp,
  };
  Kind kind;
  double value = 0.0;           // Number
  VarKind var_kind = VarKind::X;
  int var_index = 0;            // Variable, 0-based
  ExprNodePtr lhs, rhs;         // children (unary ops use lhs only)
};

/// Evaluation point; `sigma` may be empty for x-only fields.
struct EvalPoint {
  Vector x;
  Vector sigma;
};

class FieldExpr {
 public:
  FieldExpr() = default;  // the zero expression
  explicit FieldExpr(ExprNodePtr root) : root_(std::move(root)) {}

  /// Parses `text`; throws SyntaxError / UnknownIdentifier / ArityError.
  static FieldExpr parse(std::string_view text);

  static FieldExpr number(double v);
  static FieldExpr variable(VarKind kind, int index);  // 0-based

  /// Canonical text form; print(parse(t)) is a fixed point of parse∘print.
  std::string print() const;

  double eval(const EvalPoint& p) const;

  /// Largest 1-based index used per variable kind (0 if unused).
  int max_index(VarKind kind) const;

  const ExprNodePtr& root() const { return root_; }
  bool is_zero_literal() const;

  friend bool operator==(const FieldExpr& a, const FieldExpr& b);

 private:
  ExprNodePtr root_;  // null means literal 0
};

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator-(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator*(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator/(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator-(const FieldExpr& a);
FieldExpr sin(const FieldExpr& a);
FieldExpr cos(const FieldExpr& a);
FieldExpr exp(const FieldExpr& a);
FieldExpr pow(const FieldExpr& base, int exponent);

/// Central difference (f(+h) - f(-h)) / 2h in the given variable; one
/// optional Richardson pass halves the step and extrapolates.
double diff_numeric(const FieldExpr& expr, const EvalPoint& p, VarKind kind,
                    int index, const FdOptions& opts = {});

/// Exact integer power by binary exponentiation; semantics shared with the
/// corpus reference evaluator.
double integer_pow(double base, long long e);

}  // namespace cosetgauge
