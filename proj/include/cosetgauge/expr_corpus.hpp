#pragma once

// Seeded random-expression corpus and the independent reference evaluator
// used to cross-check the parser and evaluator (also exposed through the
// check-parser command).

#include <cstdint>
#include <optional>

#include "cosetgauge/field_expr.hpp"

namespace cosetgauge {

struct CorpusOptions {
  int dim_x = 3;
  int dim_sigma = 2;
  int max_depth = 5;
  int eval_points = 3;
};

/// Independent tree-walking evaluator with the same documented semantics as
/// FieldExpr::eval; kept separate from the production path on purpose.
double reference_eval(const ExprNode& node, const EvalPoint& p);

struct CorpusResult {
  long samples = 0;
  long parse_failures = 0;      // parse threw or produced a different tree
  long roundtrip_failures = 0;  // print∘parse∘print not a fixed point
  long eval_mismatches = 0;     // eval disagrees with the reference oracle
  bool pass() const { return !parse_failures && !roundtrip_failures && !eval_mismatches; }
};

/// Generates `n` random expressions, renders and reparses them (with random
/// extra whitespace), and compares evaluation bit-for-bit against the
/// reference oracle at random points.
CorpusResult run_expression_corpus(long n, std::uint64_t seed, const CorpusOptions& opts = {});

}  // namespace cosetgauge
