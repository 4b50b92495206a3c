#include "hyperlim/elementary.hpp"

#include <cmath>
#include <vector>

namespace hyperlim {

namespace {

double inv_factorial(long k) {
  static const std::vector<double> table = [] {
    std::vector<double> t = {1.0};
    while (t.size() < 200) t.push_back(t.back() / static_cast<double>(t.size()));
    return t;
  }();
  if (k < static_cast<long>(table.size())) return table[k];
  return 0.0;  // beyond double range anyway
}

Hyper bounded_unknown(const Rational& window, Rational order, double bound) {
  return Hyper::from_parts(PuiseuxSeries(window), Fuzz{order, bound}, 0.0, std::nullopt);
}

// Terms of s with the constant (exponent 0) entry dropped. Valid for series
// with nonnegative leading exponent.
PuiseuxSeries strip_constant(const PuiseuxSeries& s) {
  std::vector<Term> tail;
  for (const Term& t : s.terms()) {
    if (t.exponent.is_positive()) tail.push_back(t);
  }
  return PuiseuxSeries::normalized(std::move(tail), s.window());
}

Hyper sin_cos_finite(const Hyper& a, bool is_sin) {
  double r = a.series().coeff_at(Rational(0));
  double sr = std::sin(r);
  double cr = std::cos(r);
  PuiseuxSeries u = strip_constant(a.series());
  auto coeff = [&](long k) {
    double d = 0.0;
    switch (k % 4) {
      case 0: d = is_sin ? sr : cr; break;
      case 1: d = is_sin ? cr : -sr; break;
      case 2: d = is_sin ? -sr : -cr; break;
      default: d = is_sin ? -cr : sr; break;
    }
    return d * inv_factorial(k);
  };
  PuiseuxSeries core = power_series_eval(u, a.window(), coeff);
  // |sin(x+B) - sin(x)| <= |B|, same for cos: the unknown passes through
  // with unit slope.
  return Hyper::from_parts(core, a.fuzz(), 0.0, std::nullopt);
}

Hyper exp_finite(const Hyper& a) {
  double r = a.series().coeff_at(Rational(0));
  double er = std::exp(r);
  if (!std::isfinite(er)) {
    throw Error(ErrorCode::invalid_scalar, "exp overflowed the double range");
  }
  PuiseuxSeries u = strip_constant(a.series());
  PuiseuxSeries core =
      power_series_eval(u, a.window(), [&](long k) { return er * inv_factorial(k); });
  if (!a.fuzz()) return Hyper::from_parts(core, std::nullopt, 0.0, std::nullopt);

  const Fuzz& fz = *a.fuzz();
  if (fz.bound > 700.0) {
    throw Error(ErrorCode::precision_exhausted,
                "bounded unknown too wide to exponentiate");
  }
  if (fz.order.is_zero()) {
    // exp(x + B) = exp(x) * (cosh B' + sinh B') for some |B'| <= bound, an
    // exact envelope around exp(x) * cosh(bound).
    double ch = std::cosh(fz.bound);
    double sh = std::sinh(fz.bound);
    std::vector<Term> scaled = core.terms();
    for (Term& t : scaled) t.coeff *= ch;
    PuiseuxSeries center = PuiseuxSeries::normalized(std::move(scaled), core.window());
    return Hyper::from_parts(center, Fuzz{Rational(0), core.abs_coeff_sum() * sh}, 0.0,
                             std::nullopt);
  }
  // Mean value bound: |exp(x+B) - exp(x)| <= exp(|x| + bound) * |B| once
  // dx <= 1, where |x| <= |r| + sum of tail coefficient magnitudes.
  double slope = std::exp(std::abs(r) + u.abs_coeff_sum() + fz.bound);
  if (!std::isfinite(slope)) {
    throw Error(ErrorCode::invalid_scalar, "exp overflowed the double range");
  }
  return Hyper::from_parts(core, Fuzz{fz.order, slope * fz.bound}, 0.0, std::nullopt);
}

// ln of a value with positive standard part c0 (series lead exponent 0,
// no log marker). A bounded unknown must stay clear of zero.
Hyper ln_finite_pos(const Hyper& a) {
  double c0 = a.series().leading_coeff();
  if (a.fuzz() && a.fuzz()->order.is_zero() && c0 - a.fuzz()->bound <= 0.0) {
    throw Error(ErrorCode::domain_error, "ln of a possibly nonpositive value");
  }
  std::vector<Term> rel;
  for (const Term& t : a.series().terms()) {
    if (t.exponent.is_positive()) rel.push_back({t.exponent, t.coeff / c0});
  }
  PuiseuxSeries u = PuiseuxSeries::normalized(std::move(rel), a.window());
  auto coeff = [](long k) {
    if (k == 0) return 0.0;
    double c = 1.0 / static_cast<double>(k);
    return (k % 2 == 0) ? -c : c;
  };
  std::vector<Term> out = power_series_eval(u, a.window(), coeff).terms();
  double lc = std::log(c0);
  if (lc != 0.0) out.push_back({Rational(0), lc});
  PuiseuxSeries core = PuiseuxSeries::normalized(std::move(out), a.window());
  std::optional<Fuzz> fuzz_out;
  if (a.fuzz()) {
    double denom = a.fuzz()->order.is_zero() ? c0 - a.fuzz()->bound : c0;
    fuzz_out = Fuzz{a.fuzz()->order, a.fuzz()->bound / denom};
  }
  return Hyper::from_parts(core, fuzz_out, 0.0, std::nullopt);
}

// ln of a series-led value with positive leading coefficient: factor out the
// leading monomial c * dx^e, so ln a = ln c - e*ln(1/dx) + ln(a / (c dx^e)).
Hyper ln_factored(const Hyper& a) {
  const Rational& e = a.series().leading_exponent();
  double c = a.series().leading_coeff();
  Hyper mono = Hyper::from_parts(PuiseuxSeries::monomial(c, e, a.window()), std::nullopt,
                                 0.0, std::nullopt);
  Hyper rel = div(a, mono);
  Hyper out = ln_finite_pos(rel);
  out = add(out, from_real(std::log(c), a.window()));
  if (!e.is_zero()) {
    out = add(out, Hyper::from_parts(PuiseuxSeries(a.window()), std::nullopt,
                                     -e.to_double(), std::nullopt));
  }
  return out;
}

Hyper apply_ln(const Hyper& a) {
  if (a.huge()) {
    if (*a.huge() == Sign::negative) {
      throw Error(ErrorCode::domain_error, "ln of a negative value");
    }
    throw Error(ErrorCode::precision_exhausted,
                "ln of an exponentially large value is not representable");
  }
  NumClass cls = classify(a);
  if (cls.is_infinitely_large) {
    if (sign_of(a) < 0) {
      throw Error(ErrorCode::domain_error, "ln of a negative value");
    }
    if (!a.series().is_zero() && a.series().leading_exponent().is_negative()) {
      return ln_factored(a);
    }
    throw Error(ErrorCode::precision_exhausted,
                "ln of a logarithmically large value is not representable");
  }
  double c0 = a.series().is_zero() ? 0.0 : a.series().coeff_at(Rational(0));
  if (c0 < 0.0) throw Error(ErrorCode::domain_error, "ln of a negative value");
  if (c0 > 0.0) return ln_finite_pos(a);
  // Infinitesimal argument: defined only on the positive side.
  int sgn = sign_of(a);
  if (sgn <= 0) throw Error(ErrorCode::domain_error, "ln of a nonpositive value");
  return ln_factored(a);
}

Hyper apply_exp(const Hyper& a) {
  if (a.huge()) {
    if (*a.huge() == Sign::positive) return a;
    return bounded_unknown(a.window(), a.window(), 1.0);
  }
  NumClass cls = classify(a);
  if (!cls.is_infinitely_large) return exp_finite(a);
  int sgn = sign_of(a);
  bool series_led = !a.series().is_zero() && a.series().leading_exponent().is_negative();
  if (!series_led) {
    // exp(k*ln(1/dx)) is a dx power with a floating exponent; out of model.
    throw Error(ErrorCode::precision_exhausted,
                "exp of a logarithmically large value is not representable");
  }
  if (sgn > 0) {
    return Hyper::from_parts(PuiseuxSeries(a.window()), std::nullopt, 0.0, Sign::positive);
  }
  // exp(-large) sinks below every retained power of dx.
  return bounded_unknown(a.window(), a.window(), 1.0);
}

Hyper apply_sin_cos(Elementary f, const Hyper& a) {
  if (a.huge()) return bounded_unknown(a.window(), Rational(0), 1.0);
  NumClass cls = classify(a);
  if (cls.is_infinitely_large) return bounded_unknown(a.window(), Rational(0), 1.0);
  return sin_cos_finite(a, f == Elementary::sin_fn);
}

}  // namespace

const char* name_of(Elementary f) {
  switch (f) {
    case Elementary::sin_fn: return "sin";
    case Elementary::cos_fn: return "cos";
    case Elementary::tan_fn: return "tan";
    case Elementary::exp_fn: return "exp";
    case Elementary::ln_fn: return "ln";
    case Elementary::sqrt_fn: return "sqrt";
    case Elementary::abs_fn: return "abs";
  }
  return "?";
}

std::optional<Elementary> elementary_by_name(std::string_view name) {
  if (name == "sin") return Elementary::sin_fn;
  if (name == "cos") return Elementary::cos_fn;
  if (name == "tan") return Elementary::tan_fn;
  if (name == "exp") return Elementary::exp_fn;
  if (name == "ln") return Elementary::ln_fn;
  if (name == "sqrt") return Elementary::sqrt_fn;
  if (name == "abs") return Elementary::abs_fn;
  return std::nullopt;
}

Hyper apply(Elementary f, const Hyper& a) {
  switch (f) {
    case Elementary::abs_fn: return abs(a);
    case Elementary::sqrt_fn: return nth_root(a, 2);
    case Elementary::tan_fn:
      return div(apply(Elementary::sin_fn, a), apply(Elementary::cos_fn, a));
    case Elementary::sin_fn:
    case Elementary::cos_fn: return apply_sin_cos(f, a);
    case Elementary::exp_fn: return apply_exp(a);
    case Elementary::ln_fn: return apply_ln(a);
  }
  throw Error(ErrorCode::invalid_input, "unknown elementary function");
}

double apply_real(Elementary f, double x) {
  switch (f) {
    case Elementary::sin_fn: return std::sin(x);
    case Elementary::cos_fn: return std::cos(x);
    case Elementary::tan_fn: return std::tan(x);
    case Elementary::exp_fn: return std::exp(x);
    case Elementary::ln_fn:
      if (!(x > 0.0)) throw Error(ErrorCode::domain_error, "ln of a nonpositive value");
      return std::log(x);
    case Elementary::sqrt_fn:
      if (x < 0.0) throw Error(ErrorCode::domain_error, "sqrt of a negative value");
      return std::sqrt(x);
    case Elementary::abs_fn: return std::abs(x);
  }
  throw Error(ErrorCode::invalid_input, "unknown elementary function");
}

std::vector<double> taylor_coefficients(Elementary f, double center, int count) {
  if (count < 1) throw Error(ErrorCode::invalid_input, "count must be at least 1");
  std::vector<double> out;
  out.reserve(count);
  switch (f) {
    case Elementary::sin_fn:
    case Elementary::cos_fn: {
      double sr = std::sin(center);
      double cr = std::cos(center);
      bool is_sin = f == Elementary::sin_fn;
      for (int k = 0; k < count; ++k) {
        double d = 0.0;
        switch (k % 4) {
          case 0: d = is_sin ? sr : cr; break;
          case 1: d = is_sin ? cr : -sr; break;
          case 2: d = is_sin ? -sr : -cr; break;
          default: d = is_sin ? -cr : sr; break;
        }
        out.push_back(d * inv_factorial(k));
      }
      return out;
    }
    case Elementary::exp_fn: {
      double er = std::exp(center);
      for (int k = 0; k < count; ++k) out.push_back(er * inv_factorial(k));
      return out;
    }
    case Elementary::ln_fn: {
      if (!(center > 0.0)) throw Error(ErrorCode::domain_error, "ln needs a positive center");
      out.push_back(std::log(center));
      double p = 1.0;  // (-1)^(k+1) / center^k accumulator
      for (int k = 1; k < count; ++k) {
        p /= -center;
        out.push_back(-p / static_cast<double>(k));
      }
      return out;
    }
    case Elementary::sqrt_fn: return pow_taylor_coefficients(0.5, center, count);
    case Elementary::tan_fn: {
      if (std::cos(center) == 0.0) {
        throw Error(ErrorCode::domain_error, "tan is not analytic at a pole");
      }
      // a' = 1 + a^2 termwise: (k+1) a_{k+1} = [k == 0] + sum_i a_i a_{k-i}.
      out.push_back(std::tan(center));
      for (int k = 0; k + 1 < count; ++k) {
        double s = k == 0 ? 1.0 : 0.0;
        for (int i = 0; i <= k; ++i) s += out[i] * out[k - i];
        out.push_back(s / static_cast<double>(k + 1));
      }
      return out;
    }
    case Elementary::abs_fn: {
      if (center == 0.0) throw Error(ErrorCode::domain_error, "abs is not analytic at 0");
      out.push_back(std::abs(center));
      if (count > 1) out.push_back(center > 0.0 ? 1.0 : -1.0);
      while (static_cast<int>(out.size()) < count) out.push_back(0.0);
      return out;
    }
  }
  throw Error(ErrorCode::invalid_input, "unknown elementary function");
}

std::vector<double> pow_taylor_coefficients(double exponent, double center, int count) {
  if (count < 1) throw Error(ErrorCode::invalid_input, "count must be at least 1");
  if (!(center > 0.0)) {
    throw Error(ErrorCode::domain_error, "power expansion needs a positive center");
  }
  std::vector<double> out;
  out.reserve(count);
  out.push_back(std::pow(center, exponent));
  for (int k = 1; k < count; ++k) {
    out.push_back(out.back() * (exponent - static_cast<double>(k - 1)) /
                  (static_cast<double>(k) * center));
  }
  return out;
}

}  // namespace hyperlim
