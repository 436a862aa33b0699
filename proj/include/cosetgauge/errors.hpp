#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cosetgauge {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// lie_core
struct SpanViolation : Error { using Error::Error; };
struct DependentBasis : Error { using Error::Error; };
struct DegenerateKilling : Error { using Error::Error; };

// coset geometry
struct OutsideChart : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// field expressions
struct SyntaxError : Error {
  SyntaxError(std::string msg, std::size_t offset, std::vector<std::string> expected)
      : Error(std::move(msg)), offset(offset), expected(std::move(expected)) {}
  std::size_t offset;
  std::vector<std::string> expected;
};
struct UnknownIdentifier : Error { using Error::Error; };
struct ArityError : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };
struct EvalError : Error { using Error::Error; };

// reconstruction
struct Inconsistent : Error { using Error::Error; };

// scenarios
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

}  // namespace cosetgauge
