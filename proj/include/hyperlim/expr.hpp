#pragma once

#include <memory>
#include <string>

#include "hyperlim/elementary.hpp"
#include "hyperlim/series.hpp"

namespace hyperlim {

enum class NodeKind { number, variable, unary_minus, add, sub, mul, div, pow, call, root };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree. Field use per kind: `number` for literals,
// `fn` for call, `degree` for root; `a` is the left operand, unary child or
// call/root argument, `b` the right operand of binaries.
struct Expr {
  NodeKind kind = NodeKind::number;
  double number = 0.0;
  Elementary fn = Elementary::sin_fn;
  long degree = 0;
  ExprPtr a;
  ExprPtr b;
  SourceSpan span{};
};

// Grammar: add/sub < mul/div < unary minus < pow (right-associative);
// `|e|` is sugar for abs(e); `root(n, e)` the n-th root with a positive
// integer literal n; constants `pi` and `e`; one variable (default "x").
// Powers need a constant base or a constant exponent; both-variable powers
// are rejected here. ParseError carries the offending SourceSpan.
ExprPtr parse_expression(const std::string& text, const std::string& variable = "x");

// Canonical text with minimal parentheses; reparsing yields a structurally
// equal tree.
std::string to_text(const ExprPtr& e, const std::string& variable = "x");

bool depends_on_variable(const ExprPtr& e);

// Evaluation over the series model. Errors from the arithmetic and lift
// layers are rethrown with the span of the innermost failing node attached.
// Constants inherit the window of x so precision retries reach every leaf.
Hyper eval_hyper(const ExprPtr& e, const Hyper& x);

// Plain double evaluation for the numeric oracle. DomainError off the
// natural domain, DivisionByZero on a zero divisor, NumericalFailure when a
// step produces NaN; infinities pass through as overflow markers.
double eval_real(const ExprPtr& e, double x);

// Builders for programmatic construction (counterexample generator, tests).
ExprPtr make_number(double value);
ExprPtr make_variable();
ExprPtr make_unary_minus(ExprPtr a);
ExprPtr make_binary(NodeKind op, ExprPtr a, ExprPtr b);
ExprPtr make_call(Elementary fn, ExprPtr a);
ExprPtr make_root(long degree, ExprPtr a);

}  // namespace hyperlim
