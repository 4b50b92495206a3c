#include <algorithm>
#include <cmath>
#include <vector>

#include "hyperlim/limits.hpp"

namespace hyperlim {

namespace {

// Solves A c = y in place by Gaussian elimination with partial pivoting.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> y) {
  std::size_t n = y.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < 1e-300) {
      throw Error(ErrorCode::numerical_failure, "singular interpolation system");
    }
    std::swap(a[col], a[pivot]);
    std::swap(y[col], y[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      double f = a[row][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      y[row] -= f * y[col];
    }
  }
  std::vector<double> c(n, 0.0);
  for (std::size_t row = n; row-- > 0;) {
    double s = y[row];
    for (std::size_t k = row + 1; k < n; ++k) s -= a[row][k] * c[k];
    c[row] = s / a[row][row];
  }
  return c;
}

// Coefficients of the polynomial through the nodes, ascending powers.
std::vector<double> interpolate(const std::vector<PointSample>& nodes) {
  std::size_t n = nodes.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      a[i][k] = p;
      p *= nodes[i].x;
    }
    y[i] = nodes[i].y;
  }
  return solve_dense(std::move(a), std::move(y));
}

ExprPtr x_power(long k) {
  if (k == 1) return make_variable();
  return make_binary(NodeKind::pow, make_variable(), make_number(static_cast<double>(k)));
}

ExprPtr polynomial_expr(const std::vector<double>& coeffs) {
  ExprPtr acc;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    double c = coeffs[k];
    if (c == 0.0) continue;
    double m = std::abs(c);
    ExprPtr term;
    if (k == 0) {
      term = make_number(m);
    } else if (m == 1.0) {
      term = x_power(static_cast<long>(k));
    } else {
      term = make_binary(NodeKind::mul, make_number(m), x_power(static_cast<long>(k)));
    }
    if (!acc) {
      acc = c < 0.0 ? make_unary_minus(term) : term;
    } else {
      acc = make_binary(c < 0.0 ? NodeKind::sub : NodeKind::add, acc, term);
    }
  }
  return acc ? acc : make_number(0.0);
}

// x - r as a tree, folding the sign of r so no negative literal appears.
ExprPtr shifted_variable(double r) {
  if (r == 0.0) return make_variable();
  if (r > 0.0) return make_binary(NodeKind::sub, make_variable(), make_number(r));
  return make_binary(NodeKind::add, make_variable(), make_number(-r));
}

}  // namespace

ExprPtr counterexample_poly(std::vector<PointSample> points, double r,
                            const ExtendedReal& L) {
  if (!std::isfinite(r)) {
    throw Error(ErrorCode::invalid_input, "the limit point must be finite");
  }
  for (const PointSample& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::invalid_input, "sample points must be finite");
    }
    if (p.x == r) {
      throw Error(ErrorCode::invalid_input,
                  "a sample at the limit point itself would constrain the limit");
    }
  }
  std::sort(points.begin(), points.end(),
            [](const PointSample& a, const PointSample& b) { return a.x < b.x; });
  std::vector<PointSample> unique;
  for (const PointSample& p : points) {
    if (!unique.empty() && unique.back().x == p.x) {
      if (unique.back().y != p.y) {
        throw Error(ErrorCode::invalid_input,
                    "duplicate sample abscissa with conflicting values");
      }
      continue;
    }
    unique.push_back(p);
  }

  if (L.is_finite()) {
    std::vector<PointSample> nodes = unique;
    nodes.push_back({r, L.value()});
    return polynomial_expr(interpolate(nodes));
  }

  // Improper limit: p(x) / (x-r)^2 with p(r) = sign(L) forces a two-sided
  // pole of the requested sign, while p(xi) = yi (xi-r)^2 keeps the samples.
  std::vector<PointSample> nodes;
  nodes.reserve(unique.size() + 1);
  for (const PointSample& p : unique) {
    double d = p.x - r;
    nodes.push_back({p.x, p.y * d * d});
  }
  nodes.push_back({r, L.is_plus_infinity() ? 1.0 : -1.0});
  ExprPtr numerator = polynomial_expr(interpolate(nodes));
  ExprPtr pole = make_binary(NodeKind::pow, shifted_variable(r), make_number(2.0));
  return make_binary(NodeKind::div, numerator, pole);
}

}  // namespace hyperlim
