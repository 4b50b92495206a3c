#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hyperlim/limits.hpp"
#include "support/oracles.hpp"

using namespace hyperlim;

namespace {

bool is_polynomial(const ExprPtr& e) {
  if (!e) return true;
  switch (e->kind) {
    case NodeKind::div:
    case NodeKind::call:
    case NodeKind::root: return false;
    default: return is_polynomial(e->a) && is_polynomial(e->b);
  }
}

void check_through_points(const ExprPtr& f, const std::vector<PointSample>& points) {
  for (const PointSample& p : points) {
    const double got = eval_real(f, p.x);
    CHECK(std::abs(got - p.y) <= 1e-6 * std::max(1.0, std::abs(p.y)));
  }
}

}  // namespace

TEST_CASE("one observed point never pins a limit") {
  // tabulated f(1e-10) = 1.99999999999 suggests 2; the witness reaches 17
  const std::vector<PointSample> points{{1e-10, 1.99999999999}};
  const ExprPtr f = counterexample_poly(points, 0.0, ExtendedReal::finite(17.0));
  CHECK(is_polynomial(f));
  check_through_points(f, points);
  const LimitResult r = limit(f, LimitTarget::at(0.0));
  REQUIRE(r.is_value());
  CHECK(r.value.value() == doctest::Approx(17.0).epsilon(1e-9));
}

TEST_CASE("finite targets give interpolating polynomials") {
  // abscissas sit on the grid Z/4 inside [-2,2], keeping the Vandermonde
  // solve well conditioned up to degree six
  oracle::Gen gen(97531u);
  for (int i = 0; i < 40; ++i) {
    const int m = 1 + int(gen.pick(0, 5));
    std::vector<PointSample> points;
    const double r = double(gen.pick(-8, 8)) / 4.0;
    for (int k = 0; k < m; ++k) {
      double x = double(gen.pick(-8, 8)) / 4.0;
      while (x == r ||
             std::any_of(points.begin(), points.end(),
                         [&](const PointSample& p) { return p.x == x; })) {
        x = double(gen.pick(-8, 8)) / 4.0;
      }
      points.push_back({x, double(gen.pick(-1000, 1000)) / 8.0});
    }
    const double L = double(gen.pick(-1000, 1000)) / 4.0;
    CAPTURE(i);
    const ExprPtr f = counterexample_poly(points, r, ExtendedReal::finite(L));
    CHECK(is_polynomial(f));
    check_through_points(f, points);
    const LimitResult lim = limit(f, LimitTarget::at(r));
    REQUIRE(lim.is_value());
    CHECK(lim.value.value() ==
          doctest::Approx(L).epsilon(1e-6).scale(std::max(1.0, std::abs(L))));
  }
}

TEST_CASE("infinite targets pass through the points and blow up at r") {
  const std::vector<PointSample> points{{1.0, 2.0}, {2.0, 5.0}, {-1.0, 0.5}};
  const ExprPtr up = counterexample_poly(points, 0.0, ExtendedReal::plus_infinity());
  check_through_points(up, points);
  const LimitResult ru = limit(up, LimitTarget::at(0.0));
  REQUIRE(ru.is_value());
  CHECK(ru.value == ExtendedReal::plus_infinity());

  const ExprPtr down = counterexample_poly(points, 0.0, ExtendedReal::minus_infinity());
  check_through_points(down, points);
  const LimitResult rd = limit(down, LimitTarget::at(0.0));
  REQUIRE(rd.is_value());
  CHECK(rd.value == ExtendedReal::minus_infinity());

  // a nonzero limit point exercises the shifted pole
  const ExprPtr shifted = counterexample_poly(points, 3.0, ExtendedReal::plus_infinity());
  check_through_points(shifted, points);
  const LimitResult rs = limit(shifted, LimitTarget::at(3.0));
  REQUIRE(rs.is_value());
  CHECK(rs.value == ExtendedReal::plus_infinity());
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(counterexample_poly({{0.0, 1.0}}, 0.0, ExtendedReal::finite(2.0)),
                  Error);
  CHECK_THROWS_AS(counterexample_poly({{1.0, 2.0}, {1.0, 3.0}}, 0.0,
                                      ExtendedReal::finite(2.0)),
                  Error);
  CHECK_THROWS_AS(counterexample_poly({{NAN, 2.0}}, 0.0, ExtendedReal::finite(2.0)),
                  Error);
  CHECK_THROWS_AS(counterexample_poly({{1.0, 2.0}}, NAN, ExtendedReal::finite(2.0)),
                  Error);

  // duplicates with matching ordinates collapse to one constraint
  const ExprPtr f = counterexample_poly({{1.0, 2.0}, {1.0, 2.0}}, 0.0,
                                        ExtendedReal::finite(5.0));
  CHECK(eval_real(f, 1.0) == doctest::Approx(2.0));
  const LimitResult r = limit(f, LimitTarget::at(0.0));
  CHECK(r.value.value() == doctest::Approx(5.0));
}

TEST_CASE("an empty sample set yields the constant witness") {
  const ExprPtr f = counterexample_poly({}, 1.0, ExtendedReal::finite(3.0));
  CHECK(eval_real(f, 10.0) == doctest::Approx(3.0));
}
