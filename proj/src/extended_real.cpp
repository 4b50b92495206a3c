#include "hyperlim/extended_real.hpp"

#include <cmath>
#include <charconv>

#include "hyperlim/detail/format.hpp"

namespace hyperlim {

namespace {

ExtendedReal finite_checked(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::invalid_scalar, "finite arithmetic overflowed");
  }
  return ExtendedReal::finite(v);
}

Sign sign_of_nonzero(double v) { return v > 0.0 ? Sign::positive : Sign::negative; }

bool is_integral(double v) {
  return std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.007199254740992e15;
}

}  // namespace

ExtendedReal ExtendedReal::finite(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::invalid_scalar, "finite payload must be a finite double");
  }
  ExtendedReal r;
  r.kind_ = Kind::finite;
  r.value_ = v;
  return r;
}

ExtendedReal ExtendedReal::plus_infinity() {
  ExtendedReal r;
  r.kind_ = Kind::plus_inf;
  return r;
}

ExtendedReal ExtendedReal::minus_infinity() {
  ExtendedReal r;
  r.kind_ = Kind::minus_inf;
  return r;
}

ExtendedReal ExtendedReal::infinity(Sign s) {
  return s == Sign::positive ? plus_infinity() : minus_infinity();
}

double ExtendedReal::value() const {
  if (kind_ != Kind::finite) {
    throw Error(ErrorCode::not_finite, "value() on an infinite element");
  }
  return value_;
}

Sign ExtendedReal::infinity_sign() const {
  if (kind_ == Kind::plus_inf) return Sign::positive;
  if (kind_ == Kind::minus_inf) return Sign::negative;
  throw Error(ErrorCode::invalid_input, "infinity_sign() on a finite element");
}

std::string ExtendedReal::str() const {
  if (kind_ == Kind::plus_inf) return "inf";
  if (kind_ == Kind::minus_inf) return "-inf";
  return detail::format_double(value_);
}

std::optional<ExtendedReal> ExtendedReal::parse(const std::string& text) {
  std::size_t b = text.find_first_not_of(" \t");
  std::size_t e = text.find_last_not_of(" \t");
  if (b == std::string::npos) return std::nullopt;
  std::string t = text.substr(b, e - b + 1);
  if (t == "inf" || t == "+inf") return plus_infinity();
  if (t == "-inf") return minus_infinity();
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && t.front() == '+') ++first;  // from_chars rejects a leading plus
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return finite(v);
}

ExtendedReal st(const Hyper& a) {
  if (a.huge()) return ExtendedReal::infinity(*a.huge());
  const PuiseuxSeries& s = a.series();
  if (!s.is_zero()) {
    const Rational& e = s.leading_exponent();
    double c = s.leading_coeff();
    if (e.is_negative()) {
      if (a.fuzz() && a.fuzz()->order == e && a.fuzz()->bound >= std::abs(c)) {
        throw Error::undetermined(
            "standard part undetermined: bounded unknown reaches the "
            "infinitely large leading term",
            std::nullopt);
      }
      return ExtendedReal::infinity(sign_of_nonzero(c));
    }
    if (a.log_coeff() != 0.0) {
      return ExtendedReal::infinity(sign_of_nonzero(a.log_coeff()));
    }
    double c0 = s.coeff_at(Rational(0));
    if (a.fuzz() && a.fuzz()->order.is_zero()) {
      double b = a.fuzz()->bound;
      throw Error::undetermined(
          "standard part undetermined within [" + detail::format_double(c0 - b) +
              ", " + detail::format_double(c0 + b) + "]",
          std::make_pair(c0 - b, c0 + b));
    }
    return ExtendedReal::finite(c0);
  }
  if (a.log_coeff() != 0.0) {
    if (a.fuzz() && a.fuzz()->order.is_negative()) {
      throw Error::undetermined(
          "standard part undetermined: bounded unknown at negative order",
          std::nullopt);
    }
    return ExtendedReal::infinity(sign_of_nonzero(a.log_coeff()));
  }
  if (a.fuzz()) {
    if (a.fuzz()->order.is_negative()) {
      throw Error::undetermined(
          "standard part undetermined: bounded unknown at negative order",
          std::nullopt);
    }
    if (a.fuzz()->order.is_zero()) {
      double b = a.fuzz()->bound;
      throw Error::undetermined("standard part undetermined within [" +
                                    detail::format_double(-b) + ", " +
                                    detail::format_double(b) + "]",
                                std::make_pair(-b, b));
    }
  }
  return ExtendedReal::finite(0.0);
}

Decomposition decompose(const Hyper& a) {
  NumClass c = classify(a);
  if (c.is_infinitely_large) {
    throw Error(ErrorCode::not_finite, "decompose of an infinitely large value");
  }
  ExtendedReal standard = st(a);
  Decomposition d;
  d.standard = standard.value();
  d.infinitesimal_part = sub(a, from_real(d.standard, a.window()));
  return d;
}

ExtendedReal ext_add(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.is_finite() && b.is_finite()) return finite_checked(a.value() + b.value());
  if (a.is_finite()) return b;
  if (b.is_finite()) return a;
  if (a == b) return a;
  throw Error::illegal("inf - inf");
}

ExtendedReal ext_sub(const ExtendedReal& a, const ExtendedReal& b) {
  if (b.is_finite()) return ext_add(a, ExtendedReal::finite(-b.value()));
  return ext_add(a, b.is_plus_infinity() ? ExtendedReal::minus_infinity()
                                         : ExtendedReal::plus_infinity());
}

ExtendedReal ext_mul(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.is_finite() && b.is_finite()) return finite_checked(a.value() * b.value());
  const ExtendedReal& fin = a.is_finite() ? a : b;
  if (fin.is_finite() && fin.value() == 0.0) throw Error::illegal("0 * inf");
  Sign sa = a.is_finite() ? sign_of_nonzero(a.value()) : a.infinity_sign();
  Sign sb = b.is_finite() ? sign_of_nonzero(b.value()) : b.infinity_sign();
  return ExtendedReal::infinity(sa * sb);
}

ExtendedReal ext_div(const ExtendedReal& a, const ExtendedReal& b) {
  if (b.is_finite()) {
    if (b.value() == 0.0) {
      if (a.is_finite() && a.value() == 0.0) throw Error::illegal("0/0");
      throw Error::illegal("1/0");
    }
    if (a.is_finite()) return finite_checked(a.value() / b.value());
    return ExtendedReal::infinity(a.infinity_sign() * sign_of_nonzero(b.value()));
  }
  if (a.is_finite()) return ExtendedReal::finite(0.0);
  throw Error::illegal("inf/inf");
}

ExtendedReal ext_exp(const ExtendedReal& a) {
  if (a.is_plus_infinity()) return ExtendedReal::plus_infinity();
  if (a.is_minus_infinity()) return ExtendedReal::finite(0.0);
  return finite_checked(std::exp(a.value()));
}

ExtendedReal ext_ln(const ExtendedReal& a) {
  if (a.is_plus_infinity()) return ExtendedReal::plus_infinity();
  if (a.is_minus_infinity()) {
    throw Error(ErrorCode::domain_error, "ln of minus infinity");
  }
  if (a.value() <= 0.0) {
    throw Error(ErrorCode::domain_error, "ln of a nonpositive real");
  }
  return finite_checked(std::log(a.value()));
}

ExtendedReal ext_pow(const ExtendedReal& base, const ExtendedReal& exponent) {
  if (base.is_finite() && exponent.is_finite()) {
    double b = base.value();
    double q = exponent.value();
    if (b > 0.0) return finite_checked(std::pow(b, q));
    if (b == 0.0) {
      if (q > 0.0) return ExtendedReal::finite(0.0);
      if (q == 0.0) throw Error::illegal("0^0");
      throw Error::illegal("1/0");
    }
    if (is_integral(q)) return finite_checked(std::pow(b, q));
    throw Error(ErrorCode::domain_error, "negative base with non-integer exponent");
  }
  if (base.is_finite()) {
    double b = base.value();
    bool to_plus = exponent.is_plus_infinity();
    if (b > 1.0) return to_plus ? ExtendedReal::plus_infinity() : ExtendedReal::finite(0.0);
    if (b == 1.0) throw Error::illegal("1^inf");
    if (b > 0.0) return to_plus ? ExtendedReal::finite(0.0) : ExtendedReal::plus_infinity();
    if (b == 0.0) {
      if (to_plus) return ExtendedReal::finite(0.0);
      throw Error::illegal("1/0");
    }
    throw Error(ErrorCode::domain_error, "negative base with infinite exponent");
  }
  if (exponent.is_finite()) {
    double q = exponent.value();
    if (q == 0.0) throw Error::illegal("inf^0");
    if (base.is_plus_infinity()) {
      return q > 0.0 ? ExtendedReal::plus_infinity() : ExtendedReal::finite(0.0);
    }
    if (!is_integral(q)) {
      throw Error(ErrorCode::domain_error, "negative base with non-integer exponent");
    }
    bool odd = std::fmod(std::abs(q), 2.0) == 1.0;
    if (q > 0.0) {
      return odd ? ExtendedReal::minus_infinity() : ExtendedReal::plus_infinity();
    }
    return ExtendedReal::finite(0.0);
  }
  if (base.is_plus_infinity()) {
    return exponent.is_plus_infinity() ? ExtendedReal::plus_infinity()
                                       : ExtendedReal::finite(0.0);
  }
  throw Error(ErrorCode::domain_error, "negative base with infinite exponent");
}

}  // namespace hyperlim
