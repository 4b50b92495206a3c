#include <algorithm>
#include <cmath>
#include <vector>

#include "hyperlim/limits.hpp"

namespace hyperlim {

namespace {

// Samples toward the target: h = 10^-3..10^-8 around a finite point,
// x = 10^3..10^8 toward an infinity. Samples that fail to evaluate or come
// back NaN are skipped; infinities are kept as overflow markers.
std::vector<double> collect_samples(const ExprPtr& e, const LimitTarget& target) {
  std::vector<double> values;
  for (int k = 3; k <= 8; ++k) {
    double x = 0.0;
    switch (target.approach) {
      case Approach::from_right: x = target.point + std::pow(10.0, -k); break;
      case Approach::from_left: x = target.point - std::pow(10.0, -k); break;
      case Approach::to_plus_infinity: x = std::pow(10.0, k); break;
      case Approach::to_minus_infinity: x = -std::pow(10.0, k); break;
      case Approach::two_sided:
        throw Error(ErrorCode::invalid_input, "sampling needs a single direction");
    }
    try {
      double v = eval_real(e, x);
      if (!std::isnan(v)) values.push_back(v);
    } catch (const Error&) {
      // out of domain at this sample; the count check below handles it
    }
  }
  return values;
}

double aitken(double a, double b, double c) {
  double denom = c - 2.0 * b + a;
  if (!std::isfinite(denom) || std::abs(denom) < 1e-300) return c;
  double ext = c - (c - b) * (c - b) / denom;
  if (!std::isfinite(ext) || std::abs(ext - c) > 20.0 * std::abs(c - b)) return c;
  return ext;
}

NumericEstimate classify_trend(const std::vector<double>& v) {
  std::size_t n = v.size();
  bool tail_finite = std::isfinite(v[n - 1]) && std::isfinite(v[n - 2]) &&
                     std::isfinite(v[n - 3]);
  if (tail_finite) {
    double d_first = std::abs(v[1] - v[0]);
    double d_last = std::abs(v[n - 1] - v[n - 2]);
    bool contracting = d_last <= 1e-4 * std::max(1.0, std::abs(v[n - 1])) &&
                       d_last <= d_first + 1e-12;
    if (!contracting && n >= 4) {
      // Geometric contraction: differences shrink at every step and end well
      // below where they started. Catches slow power-law decay (x^1/2 and
      // friends) whose last step is still above the absolute cutoff, while
      // logarithmic divergence keeps its differences constant and power
      // growth makes them increase.
      bool shrinking = std::isfinite(v[0]) && std::isfinite(v[1]);
      double prev = d_first;
      for (std::size_t i = 2; shrinking && i < n; ++i) {
        if (!std::isfinite(v[i])) { shrinking = false; break; }
        double d = std::abs(v[i] - v[i - 1]);
        if (!(d < prev)) shrinking = false;
        prev = d;
      }
      contracting = shrinking && d_last <= 0.15 * d_first;
    }
    if (contracting) {
      double value = aitken(v[n - 3], v[n - 2], v[n - 1]);
      return {ExtendedReal::finite(value), Confidence::converged};
    }
  }
  bool growing = true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(std::abs(v[i + 1]) >= std::abs(v[i]))) growing = false;
  }
  bool sign_plus = v[n - 1] > 0.0 && v[n - 2] > 0.0 && v[n - 3] > 0.0;
  bool sign_minus = v[n - 1] < 0.0 && v[n - 2] < 0.0 && v[n - 3] < 0.0;
  bool large = !std::isfinite(v[n - 1]) || std::abs(v[n - 1]) >= 1e5 ||
               std::abs(v[n - 1]) >= 2.0 * std::max(std::abs(v[0]), 1e-300);
  if (growing && large && (sign_plus || sign_minus)) {
    return {sign_plus ? ExtendedReal::plus_infinity() : ExtendedReal::minus_infinity(),
            Confidence::diverging};
  }
  return {ExtendedReal::finite(0.0), Confidence::oscillating};
}

NumericEstimate one_direction(const ExprPtr& e, const LimitTarget& target) {
  std::vector<double> values = collect_samples(e, target);
  if (values.size() < 3) {
    throw Error(ErrorCode::domain_error, "too few evaluable samples near the target");
  }
  return classify_trend(values);
}

}  // namespace

NumericEstimate numeric_estimate(const ExprPtr& e, const LimitTarget& target) {
  if (target.approach != Approach::two_sided) return one_direction(e, target);
  NumericEstimate right = one_direction(e, LimitTarget::from_right_of(target.point));
  NumericEstimate left = one_direction(e, LimitTarget::from_left_of(target.point));
  if (left.confidence == Confidence::converged &&
      right.confidence == Confidence::converged) {
    double l = left.value.value();
    double r = right.value.value();
    if (std::abs(l - r) <= 1e-5 * std::max({1.0, std::abs(l), std::abs(r)})) {
      return {ExtendedReal::finite(0.5 * (l + r)), Confidence::converged};
    }
    return {ExtendedReal::finite(0.0), Confidence::oscillating};
  }
  if (left.confidence == Confidence::diverging &&
      right.confidence == Confidence::diverging && left.value == right.value) {
    return right;
  }
  return {ExtendedReal::finite(0.0), Confidence::oscillating};
}

}  // namespace hyperlim
