#include <doctest.h>

#include <cmath>

#include "hyperlim/limits.hpp"

using namespace hyperlim;

TEST_CASE("limit targets parse and print") {
  const struct {
    const char* text;
    Approach approach;
    double point;
  } good[] = {
      {"x->2", Approach::two_sided, 2.0},
      {"x->2+", Approach::from_right, 2.0},
      {"x->2-", Approach::from_left, 2.0},
      {"x->-1.5+", Approach::from_right, -1.5},
      {"x->+inf", Approach::to_plus_infinity, 0.0},
      {"x->inf", Approach::to_plus_infinity, 0.0},
      {"x->-inf", Approach::to_minus_infinity, 0.0},
      {" x -> 0.5 ", Approach::two_sided, 0.5},
  };
  for (const auto& c : good) {
    CAPTURE(c.text);
    const auto t = LimitTarget::parse(c.text);
    REQUIRE(t.has_value());
    CHECK(t->approach == c.approach);
    CHECK(t->point == doctest::Approx(c.point));
  }
  for (const char* text : {"x→2", "y->0", "x->2++", "x->", "->2", "x->two", ""}) {
    CAPTURE(text);
    CHECK_FALSE(LimitTarget::parse(text).has_value());
  }
  CHECK(LimitTarget::at(2.0).str() == "x->2");
  CHECK(LimitTarget::from_right_of(2.0).str() == "x->2+");
  CHECK(LimitTarget::from_left_of(-1.0).str() == "x->-1-");
  CHECK(LimitTarget::plus_infinity().str() == "x->+inf");
  CHECK(LimitTarget::minus_infinity().str("t") == "t->-inf");
  const auto t = LimitTarget::parse("u->3+", "u");
  REQUIRE(t.has_value());
  CHECK(t->approach == Approach::from_right);
}

TEST_CASE("two-sided limits combine one-sided evaluations") {
  const ExprPtr sign = parse_expression("abs(x)/x");
  const LimitResult r = two_sided_limit(sign, 0.0);
  CHECK(r.kind == ResultKind::does_not_exist);
  CHECK(r.left == ExtendedReal::finite(-1.0));
  CHECK(r.right == ExtendedReal::finite(1.0));
  CHECK(r.str() == "DNE (left=-1, right=1)");

  const LimitResult off = two_sided_limit(sign, 2.0);
  CHECK(off.is_value());
  CHECK(off.value == ExtendedReal::finite(1.0));
}

TEST_CASE("a one-sided domain leaves the two-sided limit indeterminate") {
  const ExprPtr root = parse_expression("sqrt(x)");
  const LimitResult r = two_sided_limit(root, 0.0);
  CHECK(r.kind == ResultKind::indeterminate);

  // fully undefined: domain error propagates
  const ExprPtr nowhere = parse_expression("sqrt(-1-x^2)");
  CHECK_THROWS_AS(two_sided_limit(nowhere, 0.0), Error);
}

TEST_CASE("precision retries double the window once") {
  // x^9 * exp(x) toward -inf needs the wider window to certify the decay
  const ExprPtr e = parse_expression("x^9*exp(x)");
  const LimitResult r = limit(e, LimitTarget::minus_infinity());
  CHECK(r.is_value());
  CHECK(r.value == ExtendedReal::finite(0.0));

  // two failures settle on indeterminate instead of erroring out
  const ExprPtr osc = parse_expression("sin(1/x)");
  const LimitResult s = limit(osc, LimitTarget::from_right_of(0.0));
  CHECK(s.kind == ResultKind::indeterminate);
  REQUIRE(s.interval);
  CHECK(s.interval->first == doctest::Approx(-1.0));
  CHECK(s.interval->second == doctest::Approx(1.0));
}

TEST_CASE("derivatives from the difference quotient") {
  const ExprPtr cube = parse_expression("x^3");
  for (double x0 : {-1.0, 0.0, 2.0}) {
    const LimitResult r = derivative_at(cube, x0);
    CAPTURE(x0);
    CHECK(r.is_value());
    CHECK(r.value.value() == doctest::Approx(3.0 * x0 * x0).epsilon(1e-12));
  }

  const LimitResult corner = derivative_at(parse_expression("abs(x)"), 0.0);
  CHECK(corner.kind == ResultKind::does_not_exist);
  CHECK(corner.left == ExtendedReal::finite(-1.0));
  CHECK(corner.right == ExtendedReal::finite(1.0));

  const LimitResult vertical = derivative_at(parse_expression("root(3,x)"), 0.0);
  CHECK(vertical.is_value());
  CHECK(vertical.value == ExtendedReal::plus_infinity());

  const LimitResult chain = derivative_at(parse_expression("sin(2*x)"), 0.3);
  CHECK(chain.is_value());
  CHECK(chain.value.value() == doctest::Approx(2.0 * std::cos(0.6)).epsilon(1e-9));
}

TEST_CASE("scale does not change verdicts") {
  const ExprPtr e = parse_expression("sin(x)/x");
  for (double scale : {1.0, 2.0, 0.5}) {
    LimitOptions opt;
    opt.scale = scale;
    const LimitResult r = limit(e, LimitTarget::at(0.0), opt);
    CAPTURE(scale);
    CHECK(r.is_value());
    CHECK(r.value.value() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("evaluate_at_target exposes the raw series") {
  const ExprPtr e = parse_expression("(3+x)*(4+x)");
  const Hyper h = evaluate_at_target(e, LimitTarget::at(0.0));
  CHECK(h.series().coeff_at(Rational(0)) == doctest::Approx(12.0));
  CHECK(h.series().coeff_at(Rational(1)) == doctest::Approx(7.0));
  CHECK(h.series().coeff_at(Rational(2)) == doctest::Approx(1.0));

  const Hyper tail = evaluate_at_target(parse_expression("1/x"), LimitTarget::plus_infinity());
  CHECK(tail.series().leading_exponent() == Rational(1));
}

TEST_CASE("result strings") {
  CHECK(LimitResult::of(ExtendedReal::finite(2.5)).str() == "2.5");
  CHECK(LimitResult::of(ExtendedReal::plus_infinity()).str() == "inf");
  CHECK(LimitResult::indeterminate("bounded oscillation").str() ==
        "indeterminate (bounded oscillation)");
}
