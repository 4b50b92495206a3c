#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "hyperlim/errors.hpp"

namespace hyperlim {

// Exact rational arithmetic for series exponents and precision windows.
// Always kept in lowest terms with a positive denominator. Intermediate
// products run in 128-bit; anything that no longer fits in int64 after
// reduction raises PrecisionExhausted rather than silently wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den) { *this = reduced(num, den); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_negative() const noexcept { return num_ < 0; }
  bool is_positive() const noexcept { return num_ > 0; }
  bool is_integer() const noexcept { return den_ == 1; }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    using I = __int128;
    return reduced(I(a.num_) * b.den_ + I(b.num_) * a.den_, I(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    using I = __int128;
    return reduced(I(a.num_) * b.den_ - I(b.num_) * a.den_, I(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    using I = __int128;
    return reduced(I(a.num_) * b.num_, I(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }

  // Exact division by a nonzero integer; used for root exponents and for
  // halving fuzz orders.
  Rational divided_by(std::int64_t n) const {
    if (n == 0) throw Error(ErrorCode::invalid_input, "division of exponent by zero");
    using I = __int128;
    return reduced(I(num_), I(den_) * n);
  }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    using I = __int128;
    I lhs = I(a.num_) * b.den_;
    I rhs = I(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static Rational reduced(__int128 num, __int128 den) {
    if (den == 0) throw Error(ErrorCode::invalid_input, "zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr __int128 lo = INT64_MIN;
    constexpr __int128 hi = INT64_MAX;
    if (num < lo || num > hi || den > hi) {
      throw Error(ErrorCode::precision_exhausted, "exponent overflow");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace hyperlim
