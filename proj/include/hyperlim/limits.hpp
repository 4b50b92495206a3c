#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperlim/expr.hpp"
#include "hyperlim/extended_real.hpp"

namespace hyperlim {

enum class Approach { from_left, from_right, two_sided, to_plus_infinity, to_minus_infinity };

// Where the variable tends: r, r+, r-, +inf, -inf. Text form "x->r",
// "x->r+", "x->r-", "x->+inf", "x->-inf" (the variable name is configurable).
struct LimitTarget {
  Approach approach = Approach::two_sided;
  double point = 0.0;

  static LimitTarget at(double r) { return {Approach::two_sided, r}; }
  static LimitTarget from_right_of(double r) { return {Approach::from_right, r}; }
  static LimitTarget from_left_of(double r) { return {Approach::from_left, r}; }
  static LimitTarget plus_infinity() { return {Approach::to_plus_infinity, 0.0}; }
  static LimitTarget minus_infinity() { return {Approach::to_minus_infinity, 0.0}; }

  static std::optional<LimitTarget> parse(const std::string& text,
                                          const std::string& variable = "x");
  std::string str(const std::string& variable = "x") const;
};

// Evaluation knobs. `scale` rescales the canonical infinitesimal (dx :=
// scale * t); any positive value must give the same verdicts, which is what
// the orientation-scale invariance suite checks.
struct LimitOptions {
  Rational window = PuiseuxSeries::default_window();
  double tolerance = 1e-9;
  double scale = 1.0;
};

enum class ResultKind { value, does_not_exist, indeterminate };

// A proper or improper limit value, a structured "does not exist" carrying
// both one-sided values, or an indeterminate verdict (bounded oscillation or
// exhausted precision) with the enclosing interval when one is known.
struct LimitResult {
  ResultKind kind = ResultKind::indeterminate;
  ExtendedReal value = ExtendedReal::finite(0.0);
  ExtendedReal left = ExtendedReal::finite(0.0);
  ExtendedReal right = ExtendedReal::finite(0.0);
  std::string reason;
  std::optional<std::pair<double, double>> interval;

  static LimitResult of(ExtendedReal v);
  static LimitResult dne(ExtendedReal left, ExtendedReal right);
  static LimitResult indeterminate(std::string reason,
                                   std::optional<std::pair<double, double>> interval = {});
  bool is_value() const { return kind == ResultKind::value; }
  std::string str() const;
};

// st(f(substituted point)) with one retry at a doubled window when the
// failure is an indeterminate / precision error; DomainError propagates.
// The target must be one-sided (left/right/infinity).
LimitResult one_sided_limit(const ExprPtr& e, const LimitTarget& target,
                            const LimitOptions& options = {});

// Left and right limits with the existence check: equal values (1e-9
// relative for finite ones, by variant for infinities) make the limit, a
// disagreement is DoesNotExist, one undefined side leaves the two-sided
// limit indeterminate, and two undefined sides are a DomainError.
LimitResult two_sided_limit(const ExprPtr& e, double r, const LimitOptions& options = {});

LimitResult limit(const ExprPtr& e, const LimitTarget& target,
                  const LimitOptions& options = {});

// st((f(x0 +- dx) - f(x0)) / (+-dx)) from both orientations; agreement gives
// the derivative (possibly +-inf), disagreement DoesNotExist with the two
// one-sided values.
LimitResult derivative_at(const ExprPtr& e, double x0, const LimitOptions& options = {});

// The raw hyperreal value behind a one-sided evaluation (two-sided targets
// use the right orientation). Errors propagate; no retry is applied.
Hyper evaluate_at_target(const ExprPtr& e, const LimitTarget& target,
                         const LimitOptions& options = {});

// Numeric epsilon-delta oracle: samples f along h = 10^-3..10^-8 (or
// x = 10^3..10^8 toward infinity) and classifies the trend. `value` holds
// the extrapolated limit when converged and the signed infinity when
// diverging. DomainError when fewer than three samples are evaluable.
enum class Confidence { converged, diverging, oscillating };

struct NumericEstimate {
  ExtendedReal value = ExtendedReal::finite(0.0);
  Confidence confidence = Confidence::oscillating;
};

NumericEstimate numeric_estimate(const ExprPtr& e, const LimitTarget& target);

// The Do-not-Guess witness: a function through all sample points whose limit
// at r is exactly L. Finite L gives the interpolating polynomial through the
// points plus (r, L); infinite L divides an interpolating numerator by
// (x-r)^2 so the pole is two-sided with the sign of L. Points must avoid r;
// duplicated abscissas must carry equal ordinates.
struct PointSample {
  double x = 0.0;
  double y = 0.0;
};

ExprPtr counterexample_poly(std::vector<PointSample> points, double r,
                            const ExtendedReal& L);

}  // namespace hyperlim
