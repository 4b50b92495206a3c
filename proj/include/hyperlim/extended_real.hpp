#pragma once

#include <optional>
#include <string>

#include "hyperlim/series.hpp"

namespace hyperlim {

// The extended real line R u {+inf, -inf}. Finite payloads are always
// finite doubles; arithmetic that would overflow a finite result raises
// InvalidScalar rather than smuggling an IEEE infinity into the Finite case.
class ExtendedReal {
 public:
  ExtendedReal() = default;  // finite 0

  static ExtendedReal finite(double v);
  static ExtendedReal plus_infinity();
  static ExtendedReal minus_infinity();
  static ExtendedReal infinity(Sign s);

  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  bool is_plus_infinity() const noexcept { return kind_ == Kind::plus_inf; }
  bool is_minus_infinity() const noexcept { return kind_ == Kind::minus_inf; }
  bool is_infinite() const noexcept { return kind_ != Kind::finite; }
  double value() const;  // pre: is_finite()
  Sign infinity_sign() const;  // pre: is_infinite()

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == Kind::finite) return a.value_ == b.value_;
    return true;
  }

  std::string str() const;  // decimal literal, "inf", or "-inf"
  static std::optional<ExtendedReal> parse(const std::string& text);

 private:
  enum class Kind { finite, plus_inf, minus_inf };
  Kind kind_ = Kind::finite;
  double value_ = 0.0;
};

// Standard part. Finite values map to their dx^0 coefficient, infinitely
// large values to a signed infinity. A bounded unknown of order 0 (with any
// finite center) leaves the standard part undetermined inside an interval;
// an unknown at negative order leaves it undetermined with no interval.
// Positive-order fuzz is infinitesimal and is ignored.
ExtendedReal st(const Hyper& a);

struct Decomposition {
  double standard = 0.0;
  Hyper infinitesimal_part;
};

// Splits a finite value as standard + infinitesimal (Theorem: every finite
// element has exactly one such decomposition). Errors with NotFinite on
// infinitely large input, UndeterminedStandardPart on order-0 fuzz.
Decomposition decompose(const Hyper& a);

// Arithmetic on the extended real line implementing the legal table
//   inf+inf=inf, -inf-inf=-inf, c+inf=inf, c-inf=-inf,
//   inf*inf=inf, (-inf)*(-inf)=inf, (-inf)*inf=-inf, c*(+-inf) sign rule,
//   1/(+-inf)=0, ln(inf)=inf, e^inf=inf, eps^(-inf)=0,
// and raising IllegalForm on exacty the illegal ones:
//   inf-inf, 1/0, 0/0, inf/inf, 0*(+-inf), 0^0.
ExtendedReal ext_add(const ExtendedReal& a, const ExtendedReal& b);
ExtendedReal ext_sub(const ExtendedReal& a, const ExtendedReal& b);
ExtendedReal ext_mul(const ExtendedReal& a, const ExtendedReal& b);
ExtendedReal ext_div(const ExtendedReal& a, const ExtendedReal& b);
ExtendedReal ext_exp(const ExtendedReal& a);
ExtendedReal ext_ln(const ExtendedReal& a);

// Power with the branch table for infinite exponents: base eps > 1 gives
// eps^(-inf) = 0 and eps^(+inf) = inf; base in (0,1) maps through 1/eps and
// flips; 1^(+-inf) and inf^0 are indeterminate forms and raise IllegalForm;
// 0^(+inf) = 0; 0 to a negative power divides by zero; negative bases with
// non-integer or infinite exponents are domain errors.
ExtendedReal ext_pow(const ExtendedReal& base, const ExtendedReal& exponent);

}  // namespace hyperlim
