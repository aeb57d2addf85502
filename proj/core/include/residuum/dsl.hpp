#pragma once

#include "residuum/arrangement.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace residuum {

struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Expr {
  enum class Kind { Number, ImaginaryUnit, Pi, Name, Negate, Add, Subtract, Multiply, Divide, Power, Call };

  Kind kind = Kind::Number;
  Rational number;   // Number: non-negative terminating decimal
  std::string name;  // Name, Call
  std::vector<Expr> args;
  SourceLocation where;

  /// Structural equality; locations are ignored.
  friend bool operator==(const Expr& a, const Expr& b);
};

struct DenominatorSpec {
  Expr factor;
  unsigned power = 1;
  friend bool operator==(const DenominatorSpec&, const DenominatorSpec&) = default;
};

struct ProblemSpec {
  std::vector<std::string> variables;
  std::vector<std::vector<Rational>> cone;  // empty: standard basis
  std::vector<std::pair<std::string, Expr>> parameters;
  std::optional<Expr> numerator;            // empty: 1
  std::vector<DenominatorSpec> denominators;
  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Throws ParseError with the position and the expected-token set.
ProblemSpec parse_problem(std::string_view source);

std::string to_source(const Expr& e);
std::string to_source(const ProblemSpec& spec);

struct Problem {
  std::vector<std::string> variables;
  Arrangement arrangement;
  Polyhedron cone;
};

/// Evaluates parameters and expressions at the current working precision.
/// Errors carry the position of the offending expression.
Problem build_problem(const ProblemSpec& spec);

Problem load_problem(std::string_view source);

}  // namespace residuum
