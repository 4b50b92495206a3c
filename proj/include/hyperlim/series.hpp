#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperlim/errors.hpp"
#include "hyperlim/rational.hpp"

namespace hyperlim {

// One retained term c * dx^e of a truncated series in the canonical positive
// infinitesimal dx.
struct Term {
  Rational exponent;
  double coeff = 0.0;
};

// Truncated series with rational exponents: finitely many terms, ascending
// exponents, nonzero coefficients. `window` is the precision budget: every
// retained exponent e satisfies e < leading + window. The empty series is
// exact zero.
//
// Normalization merges duplicate exponents, prunes coefficients whose
// magnitude falls below zero_tolerance() relative to the largest coefficient
// of the raw result, and truncates past the window.
class PuiseuxSeries {
 public:
  static constexpr double zero_tolerance() { return 1e-12; }
  static Rational default_window() { return Rational(8); }

  PuiseuxSeries() : window_(default_window()) {}
  explicit PuiseuxSeries(Rational window);

  static PuiseuxSeries normalized(std::vector<Term> raw, Rational window);
  static PuiseuxSeries monomial(double coeff, Rational exponent, Rational window);

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Rational& window() const noexcept { return window_; }

  const Rational& leading_exponent() const;  // pre: !is_zero()
  double leading_coeff() const;              // pre: !is_zero()
  double coeff_at(const Rational& exponent) const;
  double abs_coeff_sum() const;

 private:
  std::vector<Term> terms_;
  Rational window_;
};

enum class Sign : int { negative = -1, positive = 1 };

inline Sign operator*(Sign a, Sign b) {
  return static_cast<int>(a) * static_cast<int>(b) > 0 ? Sign::positive
                                                       : Sign::negative;
}

// An additive unknown B * dx^order with |B| <= bound and B a fixed but
// unidentified real. Models values the series calculus can bound but not
// pin down, e.g. sin of an infinitely large argument.
struct Fuzz {
  Rational order;
  double bound = 0.0;
};

// Element of the constructive hyperreal model: a truncated Puiseux series
// plus optional markers that extend it just far enough for the sign and
// leading-order rules the limit engine needs.
//
//   value = series(dx) + fuzz + log_coeff * ln(1/dx)   [or a huge marker]
//
// `huge` marks a superpolynomially large value (exp of an infinitely large
// argument); when set it dominates and the other parts are cleared.
// Invariants: fuzz bound > 0 when present; when the series is nonzero the
// fuzz order is >= the leading exponent (violations are normalized by
// widening the fuzz and dropping the dominated terms); all coefficients and
// bounds finite.
class Hyper {
 public:
  Hyper() = default;  // exact zero, default window

  static Hyper from_parts(PuiseuxSeries series, std::optional<Fuzz> fuzz,
                          double log_coeff = 0.0,
                          std::optional<Sign> huge = std::nullopt);

  const PuiseuxSeries& series() const noexcept { return series_; }
  const std::optional<Fuzz>& fuzz() const noexcept { return fuzz_; }
  double log_coeff() const noexcept { return log_coeff_; }
  const std::optional<Sign>& huge() const noexcept { return huge_; }
  const Rational& window() const noexcept { return series_.window(); }

  bool is_exact_zero() const noexcept {
    return series_.is_zero() && !fuzz_ && log_coeff_ == 0.0 && !huge_;
  }

 private:
  PuiseuxSeries series_;
  std::optional<Fuzz> fuzz_;
  double log_coeff_ = 0.0;
  std::optional<Sign> huge_;
};

// Classification per the finite / infinitesimal / infinitely large
// trichotomy. Exactly one of is_finite / is_infinitely_large holds;
// is_infinitesimal implies is_finite. is_infinitesimal means *provably*
// infinitesimal: a bounded unknown of order 0 is finite but cannot be
// certified infinitesimal, so the flag stays false there.
struct NumClass {
  bool is_infinitesimal = false;
  bool is_finite = false;
  bool is_infinitely_large = false;
};

Hyper from_real(double c, Rational window = PuiseuxSeries::default_window());
Hyper dx(Rational window = PuiseuxSeries::default_window());

Hyper neg(const Hyper& a);
Hyper add(const Hyper& a, const Hyper& b);
Hyper sub(const Hyper& a, const Hyper& b);
Hyper mul(const Hyper& a, const Hyper& b);
Hyper div(const Hyper& a, const Hyper& b);
Hyper inv(const Hyper& a);
Hyper int_pow(const Hyper& a, long n);
Hyper nth_root(const Hyper& a, long n);
Hyper abs(const Hyper& a);

// Sum_{k>=0} coeff(k) * u^k for a strictly infinitesimal series u, truncated
// at the (absolute) window exponent. Backbone of the elementary-function
// lifts: u is the infinitesimal displacement and coeff(k) the k-th Taylor
// coefficient of the function about the standard point.
PuiseuxSeries power_series_eval(const PuiseuxSeries& u, const Rational& window,
                                const std::function<double(long)>& coeff);

// Sign of the leading behavior: -1, 0 (exact zero), +1. Throws
// IndeterminateSign when a bounded unknown dominates or ties the lead.
int sign_of(const Hyper& a);

// Total order on comparable elements; IndeterminateSign otherwise.
std::strong_ordering compare(const Hyper& a, const Hyper& b);

NumClass classify(const Hyper& a);

// Stable text rendering: "c0 + c1*dx^(p/q) + ... + O~(dx^r)*[-B,B]".
std::string to_string(const Hyper& a);

inline Hyper operator-(const Hyper& a) { return neg(a); }
inline Hyper operator+(const Hyper& a, const Hyper& b) { return add(a, b); }
inline Hyper operator-(const Hyper& a, const Hyper& b) { return sub(a, b); }
inline Hyper operator*(const Hyper& a, const Hyper& b) { return mul(a, b); }
inline Hyper operator/(const Hyper& a, const Hyper& b) { return div(a, b); }

}  // namespace hyperlim
