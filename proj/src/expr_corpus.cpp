#include "cosetgauge/expr_corpus.hpp"

#include <cmath>
#include <cstring>
#include <random>
#include <string>
#include <variant>

namespace cosetgauge {

namespace {

// deliberately a second copy of the documented power semantics
double oracle_ipow(double base, long long e) {
  if (e < 0) return 1.0 / oracle_ipow(base, -e);
  double r = 1.0, p = base;
  while (e > 0) {
    if (e & 1) r *= p;
    p *= p;
    e >>= 1;
  }
  return r;
}

double oracle_finite(double v) {
  if (!std::isfinite(v)) throw NonFinite("non-finite value in expression evaluation");
  return v;
}

}  // namespace

double reference_eval(const ExprNode& n, const EvalPoint& p) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Number: return n.value;
    case K::Variable: {
      const Vector& v = (n.var_kind == VarKind::X) ? p.x : p.sigma;
      if (n.var_index >= v.size()) throw EvalError("reference_eval: variable out of range");
      return v[n.var_index];
    }
    case K::Neg: return -reference_eval(*n.lhs, p);
    case K::Add: return oracle_finite(reference_eval(*n.lhs, p) + reference_eval(*n.rhs, p));
    case K::Sub: return oracle_finite(reference_eval(*n.lhs, p) - reference_eval(*n.rhs, p));
    case K::Mul: return oracle_finite(reference_eval(*n.lhs, p) * reference_eval(*n.rhs, p));
    case K::Div: {
      double a = reference_eval(*n.lhs, p);
      double b = reference_eval(*n.rhs, p);
      if (std::abs(b) < 1e-300) throw DivisionByZero("division by zero");
      return oracle_finite(a / b);
    }
    case K::Pow: {
      double b = reference_eval(*n.lhs, p);
      double e = reference_eval(*n.rhs, p);
      double r = std::nearbyint(e);
      if (std::abs(e - r) > 1e-9) throw EvalError("non-integer exponent");
      if (r < 0 && std::abs(b) < 1e-300) throw DivisionByZero("zero base with negative exponent");
      return oracle_finite(oracle_ipow(b, static_cast<long long>(r)));
    }
    case K::Sin: return oracle_finite(std::sin(reference_eval(*n.lhs, p)));
    case K::Cos: return oracle_finite(std::cos(reference_eval(*n.lhs, p)));
    case K::Exp: return oracle_finite(std::exp(reference_eval(*n.lhs, p)));
  }
  throw EvalError("corrupt node");
}

namespace {

struct Gen {
  std::mt19937_64 eng;
  const CorpusOptions& opts;

  double unit() { return (eng() >> 11) * 0x1.0p-53; }
  int pick(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }

  FieldExpr leaf() {
    switch (pick(4)) {
      case 0: return FieldExpr::number(static_cast<double>(pick(10)));
      case 1: {
        double v = std::round(unit() * 6000.0) / 1000.0;  // 0.000 .. 6.000
        return FieldExpr::number(v);
      }
      case 2: return FieldExpr::variable(VarKind::X, pick(opts.dim_x));
      default: return FieldExpr::variable(VarKind::Sigma, pick(opts.dim_sigma));
    }
  }

  FieldExpr gen(int depth) {
    if (depth <= 0) return leaf();
    switch (pick(10)) {
      case 0: return gen(depth - 1) + gen(depth - 1);
      case 1: return gen(depth - 1) - gen(depth - 1);
      case 2: return gen(depth - 1) * gen(depth - 1);
      case 3: return gen(depth - 1) / gen(depth - 1);
      case 4: return -gen(depth - 1);
      case 5: return pow(gen(depth - 1), pick(5));
      case 6: return sin(gen(depth - 1));
      case 7: return cos(gen(depth - 1));
      case 8: return exp(gen(depth - 1));
      default: return leaf();
    }
  }

  std::string decorate(const std::string& text) {
    std::string out;
    out.reserve(text.size() * 2);
    for (char c : text) {
      if ((c == '(' || c == ')' || c == '*' || c == '/' || c == '^') && pick(2) == 0) {
        out += ' ';
        out += c;
        out += ' ';
      } else {
        out += c;
      }
    }
    return out;
  }
};

using Outcome = std::variant<std::uint64_t, int>;  // value bits or error class

template <typename F>
Outcome run_eval(F&& f) {
  try {
    double v = f();
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    return bits;
  } catch (const DivisionByZero&) {
    return 1;
  } catch (const NonFinite&) {
    return 2;
  } catch (const EvalError&) {
    return 3;
  }
}

}  // namespace

CorpusResult run_expression_corpus(long n, std::uint64_t seed, const CorpusOptions& opts) {
  Gen gen{std::mt19937_64(seed), opts};
  CorpusResult out;
  out.samples = n;
  for (long trial = 0; trial < n; ++trial) {
    FieldExpr expr = gen.gen(1 + gen.pick(opts.max_depth));
    const std::string text = expr.print();

    FieldExpr parsed;
    try {
      parsed = FieldExpr::parse(text);
      FieldExpr reparsed = FieldExpr::parse(gen.decorate(text));
      if (!(parsed == expr) || !(reparsed == expr)) {
        ++out.parse_failures;
        continue;
      }
    } catch (const Error&) {
      ++out.parse_failures;
      continue;
    }

    if (FieldExpr::parse(parsed.print()).print() != text) ++out.roundtrip_failures;

    for (int pt = 0; pt < opts.eval_points; ++pt) {
      EvalPoint p;
      p.x.resize(opts.dim_x);
      p.sigma.resize(opts.dim_sigma);
      for (int i = 0; i < opts.dim_x; ++i) p.x[i] = 2.0 * gen.unit() - 1.0;
      for (int i = 0; i < opts.dim_sigma; ++i) p.sigma[i] = 2.0 * gen.unit() - 1.0;
      Outcome impl = run_eval([&] { return parsed.eval(p); });
      Outcome oracle = run_eval([&] { return reference_eval(*expr.root(), p); });
      if (impl != oracle) ++out.eval_mismatches;
    }
  }
  return out;
}

}  // namespace cosetgauge
