#include "hyperlim/limits.hpp"

#include <charconv>
#include <cmath>

#include "hyperlim/detail/format.hpp"

namespace hyperlim {

namespace {

std::optional<double> parse_double(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (text.front() == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Errors that a wider window might resolve. Domain violations and malformed
// input never benefit from a retry.
bool retryable(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain_error:
    case ErrorCode::parse_error:
    case ErrorCode::invalid_input: return false;
    default: return true;
  }
}

Hyper substituted_point(const LimitTarget& target, const LimitOptions& options,
                        const Rational& window) {
  Hyper step = mul(from_real(options.scale, window), dx(window));
  switch (target.approach) {
    case Approach::from_right: return add(from_real(target.point, window), step);
    case Approach::from_left: return sub(from_real(target.point, window), step);
    case Approach::to_plus_infinity: return inv(step);
    case Approach::to_minus_infinity: return neg(inv(step));
    case Approach::two_sided: break;
  }
  throw Error(ErrorCode::invalid_input, "two-sided target has no single orientation");
}

bool agree(const ExtendedReal& a, const ExtendedReal& b, double tolerance) {
  if (a.is_finite() != b.is_finite()) return false;
  if (!a.is_finite()) return a == b;
  double l = a.value();
  double r = b.value();
  return std::abs(l - r) <=
         tolerance * std::max({1.0, std::abs(l), std::abs(r)});
}

}  // namespace

std::optional<LimitTarget> LimitTarget::parse(const std::string& text,
                                              const std::string& variable) {
  std::size_t b = text.find_first_not_of(" \t");
  std::size_t e = text.find_last_not_of(" \t");
  if (b == std::string::npos) return std::nullopt;
  std::string t = text.substr(b, e - b + 1);
  std::size_t arrow = t.find("->");
  if (arrow == std::string::npos) return std::nullopt;
  std::string head = t.substr(0, arrow);
  std::size_t he = head.find_last_not_of(" \t");
  head = head.substr(0, he == std::string::npos ? 0 : he + 1);
  if (head != variable) return std::nullopt;
  std::string rest = t.substr(arrow + 2);
  std::size_t rb = rest.find_first_not_of(" \t");
  if (rb == std::string::npos) return std::nullopt;
  rest = rest.substr(rb);
  if (rest == "+inf" || rest == "inf") return plus_infinity();
  if (rest == "-inf") return minus_infinity();
  if (rest.size() > 1 && (rest.back() == '+' || rest.back() == '-')) {
    std::string core = rest.substr(0, rest.size() - 1);
    if (auto r = parse_double(core)) {
      return rest.back() == '+' ? from_right_of(*r) : from_left_of(*r);
    }
  }
  if (auto r = parse_double(rest)) return at(*r);
  return std::nullopt;
}

std::string LimitTarget::str(const std::string& variable) const {
  switch (approach) {
    case Approach::two_sided: return variable + "->" + detail::format_double(point);
    case Approach::from_right: return variable + "->" + detail::format_double(point) + "+";
    case Approach::from_left: return variable + "->" + detail::format_double(point) + "-";
    case Approach::to_plus_infinity: return variable + "->+inf";
    case Approach::to_minus_infinity: return variable + "->-inf";
  }
  return variable + "->?";
}

LimitResult LimitResult::of(ExtendedReal v) {
  LimitResult r;
  r.kind = ResultKind::value;
  r.value = v;
  return r;
}

LimitResult LimitResult::dne(ExtendedReal left, ExtendedReal right) {
  LimitResult r;
  r.kind = ResultKind::does_not_exist;
  r.left = left;
  r.right = right;
  return r;
}

LimitResult LimitResult::indeterminate(std::string reason,
                                       std::optional<std::pair<double, double>> interval) {
  LimitResult r;
  r.kind = ResultKind::indeterminate;
  r.reason = std::move(reason);
  r.interval = interval;
  return r;
}

std::string LimitResult::str() const {
  switch (kind) {
    case ResultKind::value: return value.str();
    case ResultKind::does_not_exist:
      return "DNE (left=" + left.str() + ", right=" + right.str() + ")";
    case ResultKind::indeterminate: return "indeterminate (" + reason + ")";
  }
  return "?";
}

LimitResult one_sided_limit(const ExprPtr& e, const LimitTarget& target,
                            const LimitOptions& options) {
  auto attempt = [&](const Rational& window) {
    Hyper x = substituted_point(target, options, window);
    return st(eval_hyper(e, x));
  };
  try {
    return LimitResult::of(attempt(options.window));
  } catch (const Error& first) {
    if (!retryable(first.code())) throw;
    try {
      return LimitResult::of(attempt(options.window * Rational(2)));
    } catch (const Error& second) {
      if (!retryable(second.code())) throw;
      return LimitResult::indeterminate(second.what(), second.interval());
    }
  }
}

LimitResult two_sided_limit(const ExprPtr& e, double r, const LimitOptions& options) {
  std::optional<LimitResult> left, right;
  std::optional<Error> left_err, right_err;
  try {
    right = one_sided_limit(e, LimitTarget::from_right_of(r), options);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::domain_error) throw;
    right_err = err;
  }
  try {
    left = one_sided_limit(e, LimitTarget::from_left_of(r), options);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::domain_error) throw;
    left_err = err;
  }
  if (!left && !right) throw *right_err;
  if (!left || !right) {
    return LimitResult::indeterminate(
        "the function is defined on only one side of the point", std::nullopt);
  }
  if (left->kind == ResultKind::indeterminate) return *left;
  if (right->kind == ResultKind::indeterminate) return *right;
  if (agree(left->value, right->value, options.tolerance)) {
    return LimitResult::of(right->value);
  }
  return LimitResult::dne(left->value, right->value);
}

LimitResult limit(const ExprPtr& e, const LimitTarget& target, const LimitOptions& options) {
  if (target.approach == Approach::two_sided) {
    return two_sided_limit(e, target.point, options);
  }
  return one_sided_limit(e, target, options);
}

Hyper evaluate_at_target(const ExprPtr& e, const LimitTarget& target,
                         const LimitOptions& options) {
  LimitTarget t = target;
  if (t.approach == Approach::two_sided) t.approach = Approach::from_right;
  return eval_hyper(e, substituted_point(t, options, options.window));
}

LimitResult derivative_at(const ExprPtr& e, double x0, const LimitOptions& options) {
  auto quotient_st = [&](bool from_right, const Rational& window) {
    Hyper base = eval_hyper(e, from_real(x0, window));
    Hyper step = mul(from_real(from_right ? options.scale : -options.scale, window),
                     dx(window));
    Hyper fx = eval_hyper(e, add(from_real(x0, window), step));
    return st(div(sub(fx, base), step));
  };
  auto side = [&](bool from_right) {
    try {
      return LimitResult::of(quotient_st(from_right, options.window));
    } catch (const Error& first) {
      if (!retryable(first.code())) throw;
      try {
        return LimitResult::of(quotient_st(from_right, options.window * Rational(2)));
      } catch (const Error& second) {
        if (!retryable(second.code())) throw;
        return LimitResult::indeterminate(second.what(), second.interval());
      }
    }
  };
  LimitResult right = side(true);
  LimitResult left = side(false);
  if (right.kind == ResultKind::indeterminate) return right;
  if (left.kind == ResultKind::indeterminate) return left;
  if (agree(left.value, right.value, options.tolerance)) {
    return LimitResult::of(right.value);
  }
  return LimitResult::dne(left.value, right.value);
}

}  // namespace hyperlim
