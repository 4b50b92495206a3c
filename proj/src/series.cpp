#include "hyperlim/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <utility>

#include "hyperlim/detail/format.hpp"

namespace hyperlim {

namespace {

Rational min_window(const Hyper& a, const Hyper& b) {
  return std::min(a.window(), b.window());
}

Hyper huge_value(const Rational& window, Sign sign) {
  return Hyper::from_parts(PuiseuxSeries(window), std::nullopt, 0.0, sign);
}

// Raw sorted-term product with an absolute exponent cutoff. Inputs ascend;
// the inner loop breaks as soon as the combined exponent leaves the budget.
std::vector<Term> mul_raw(const std::vector<Term>& a, const std::vector<Term>& b,
                          const Rational& cutoff) {
  std::map<Rational, double> acc;
  for (const Term& ta : a) {
    for (const Term& tb : b) {
      Rational e = ta.exponent + tb.exponent;
      if (e >= cutoff) break;
      acc[e] += ta.coeff * tb.coeff;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const auto& [e, c] : acc) out.push_back({e, c});
  return out;
}

// Terms of s with the leading term stripped, exponents shifted down by the
// leading exponent and coefficients divided by the leading coefficient:
// s = c * dx^e * (1 + u) with u strictly positive-exponent.
std::vector<Term> relative_tail(const PuiseuxSeries& s) {
  std::vector<Term> u;
  const Rational& e = s.leading_exponent();
  double c = s.leading_coeff();
  for (std::size_t i = 1; i < s.terms().size(); ++i) {
    const Term& t = s.terms()[i];
    u.push_back({t.exponent - e, t.coeff / c});
  }
  return u;
}

// Sum_k coeff(k) * u^k with the given absolute exponent cutoff; coeff(0) must
// be 1. Terminates because each extra power of u raises the leading exponent
// by at least the (positive) leading exponent of u.
std::vector<Term> power_sum(const std::vector<Term>& u, const Rational& cutoff,
                            const std::function<double(long)>& coeff) {
  std::map<Rational, double> acc;
  acc[Rational(0)] = 1.0;
  std::vector<Term> pw = {{Rational(0), 1.0}};
  constexpr long kMaxPowers = 100000;
  for (long k = 1; k <= kMaxPowers; ++k) {
    pw = mul_raw(pw, u, cutoff);
    if (pw.empty()) {
      std::vector<Term> out;
      out.reserve(acc.size());
      for (const auto& [e, c] : acc) out.push_back({e, c});
      return out;
    }
    double ck = coeff(k);
    for (const Term& t : pw) acc[t.exponent] += ck * t.coeff;
  }
  throw Error(ErrorCode::precision_exhausted, "series expansion did not terminate");
}

PuiseuxSeries inv_series(const PuiseuxSeries& s) {
  const Rational& e = s.leading_exponent();
  double c = s.leading_coeff();
  std::vector<Term> u = relative_tail(s);
  for (Term& t : u) t.coeff = -t.coeff;  // expand 1/(1+u) = sum (-u)^k
  std::vector<Term> acc = power_sum(u, s.window(), [](long) { return 1.0; });
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const Term& t : acc) out.push_back({t.exponent - e, t.coeff / c});
  return PuiseuxSeries::normalized(std::move(out), s.window());
}

std::optional<Fuzz> combine_fuzz(const std::vector<Fuzz>& parts) {
  if (parts.empty()) return std::nullopt;
  Fuzz out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    out.order = std::min(out.order, parts[i].order);
    out.bound += parts[i].bound;
  }
  return out;
}

std::string exponent_text(const Rational& e) {
  if (e.is_integer() && !e.is_negative()) return e.str();
  return "(" + e.str() + ")";
}

}  // namespace

PuiseuxSeries::PuiseuxSeries(Rational window) : window_(window) {
  if (!window_.is_positive()) {
    throw Error(ErrorCode::invalid_input, "window must be positive");
  }
}

PuiseuxSeries PuiseuxSeries::normalized(std::vector<Term> raw, Rational window) {
  PuiseuxSeries out{window};
  std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) {
    return a.exponent < b.exponent;
  });
  std::vector<Term> merged;
  for (const Term& t : raw) {
    if (!merged.empty() && merged.back().exponent == t.exponent) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  double largest = 0.0;
  for (const Term& t : merged) {
    if (!std::isfinite(t.coeff)) {
      throw Error(ErrorCode::precision_exhausted, "coefficient overflow");
    }
    largest = std::max(largest, std::abs(t.coeff));
  }
  if (largest == 0.0) return out;
  double cut = zero_tolerance() * largest;
  std::vector<Term> kept;
  for (const Term& t : merged) {
    if (std::abs(t.coeff) >= cut && t.coeff != 0.0) kept.push_back(t);
  }
  if (kept.empty()) return out;
  Rational limit = kept.front().exponent + window;
  for (const Term& t : kept) {
    if (t.exponent >= limit) break;
    out.terms_.push_back(t);
  }
  return out;
}

PuiseuxSeries PuiseuxSeries::monomial(double coeff, Rational exponent, Rational window) {
  return normalized({{exponent, coeff}}, window);
}

PuiseuxSeries power_series_eval(const PuiseuxSeries& u, const Rational& window,
                                const std::function<double(long)>& coeff) {
  if (!u.is_zero() && !u.leading_exponent().is_positive()) {
    throw Error(ErrorCode::invalid_input, "power_series_eval needs an infinitesimal series");
  }
  std::vector<Term> acc = power_sum(u.terms(), window, coeff);
  for (Term& t : acc) {
    if (t.exponent == Rational(0)) t.coeff += coeff(0) - 1.0;  // power_sum seeds u^0 with 1
  }
  return PuiseuxSeries::normalized(std::move(acc), window);
}

const Rational& PuiseuxSeries::leading_exponent() const {
  if (terms_.empty()) throw Error(ErrorCode::invalid_input, "zero series has no leading term");
  return terms_.front().exponent;
}

double PuiseuxSeries::leading_coeff() const {
  if (terms_.empty()) throw Error(ErrorCode::invalid_input, "zero series has no leading term");
  return terms_.front().coeff;
}

double PuiseuxSeries::coeff_at(const Rational& exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, const Rational& e) { return t.exponent < e; });
  if (it != terms_.end() && it->exponent == exponent) return it->coeff;
  return 0.0;
}

double PuiseuxSeries::abs_coeff_sum() const {
  double s = 0.0;
  for (const Term& t : terms_) s += std::abs(t.coeff);
  return s;
}

Hyper Hyper::from_parts(PuiseuxSeries series, std::optional<Fuzz> fuzz,
                        double log_coeff, std::optional<Sign> huge) {
  Hyper h;
  h.series_ = PuiseuxSeries(series.window());
  if (huge) {
    h.huge_ = huge;
    return h;
  }
  if (!std::isfinite(log_coeff)) {
    throw Error(ErrorCode::precision_exhausted, "log coefficient overflow");
  }
  if (fuzz) {
    if (!std::isfinite(fuzz->bound) || fuzz->bound < 0.0) {
      throw Error(ErrorCode::precision_exhausted, "fuzz bound overflow");
    }
    if (fuzz->bound == 0.0) fuzz.reset();
  }
  if (fuzz && !series.is_zero() && fuzz->order < series.leading_exponent()) {
    // The unknown dominates every retained term; the terms carry no usable
    // information and are folded into a widened bound.
    fuzz->bound += series.abs_coeff_sum();
    series = PuiseuxSeries(series.window());
  }
  h.series_ = std::move(series);
  h.fuzz_ = std::move(fuzz);
  h.log_coeff_ = log_coeff;
  return h;
}

Hyper from_real(double c, Rational window) {
  if (!std::isfinite(c)) {
    throw Error(ErrorCode::invalid_scalar, "scalar must be a finite real");
  }
  if (std::abs(c) <= PuiseuxSeries::zero_tolerance()) {
    return Hyper::from_parts(PuiseuxSeries(window), std::nullopt);
  }
  return Hyper::from_parts(PuiseuxSeries::monomial(c, Rational(0), window), std::nullopt);
}

Hyper dx(Rational window) {
  return Hyper::from_parts(PuiseuxSeries::monomial(1.0, Rational(1), window), std::nullopt);
}

Hyper neg(const Hyper& a) {
  if (a.huge()) {
    return huge_value(a.window(),
                      *a.huge() == Sign::positive ? Sign::negative : Sign::positive);
  }
  std::vector<Term> terms = a.series().terms();
  for (Term& t : terms) t.coeff = -t.coeff;
  return Hyper::from_parts(PuiseuxSeries::normalized(std::move(terms), a.window()),
                           a.fuzz(), -a.log_coeff());
}

Hyper add(const Hyper& a, const Hyper& b) {
  Rational w = min_window(a, b);
  if (a.huge() || b.huge()) {
    if (a.huge() && b.huge()) {
      if (*a.huge() == *b.huge()) return huge_value(w, *a.huge());
      throw Error(ErrorCode::indeterminate_sign,
                  "sum of opposite superpolynomially large values");
    }
    return huge_value(w, a.huge() ? *a.huge() : *b.huge());
  }
  std::vector<Term> raw = a.series().terms();
  raw.insert(raw.end(), b.series().terms().begin(), b.series().terms().end());
  std::vector<Fuzz> fuzzes;
  if (a.fuzz()) fuzzes.push_back(*a.fuzz());
  if (b.fuzz()) fuzzes.push_back(*b.fuzz());
  return Hyper::from_parts(PuiseuxSeries::normalized(std::move(raw), w),
                           combine_fuzz(fuzzes), a.log_coeff() + b.log_coeff());
}

Hyper sub(const Hyper& a, const Hyper& b) { return add(a, neg(b)); }

Hyper mul(const Hyper& a, const Hyper& b) {
  Rational w = min_window(a, b);
  if (a.is_exact_zero() || b.is_exact_zero()) {
    return Hyper::from_parts(PuiseuxSeries(w), std::nullopt);
  }
  if (a.huge() || b.huge()) {
    // Superpolynomial scale beats every power and log scale, so only the
    // other factor's sign matters; an unknown sign is a hard stop.
    int sa = sign_of(a);
    int sb = sign_of(b);
    return huge_value(w, sa * sb > 0 ? Sign::positive : Sign::negative);
  }
  if (a.log_coeff() != 0.0 && b.log_coeff() != 0.0) {
    throw Error(ErrorCode::precision_exhausted,
                "product of two logarithmic-scale values");
  }

  std::vector<Term> prod;
  std::vector<Fuzz> fuzzes;
  if (!a.series().is_zero() && !b.series().is_zero()) {
    Rational cutoff = a.series().leading_exponent() + b.series().leading_exponent() + w;
    prod = mul_raw(a.series().terms(), b.series().terms(), cutoff);
  }
  if (a.fuzz() && !b.series().is_zero()) {
    fuzzes.push_back({b.series().leading_exponent() + a.fuzz()->order,
                      a.fuzz()->bound * b.series().abs_coeff_sum()});
  }
  if (b.fuzz() && !a.series().is_zero()) {
    fuzzes.push_back({a.series().leading_exponent() + b.fuzz()->order,
                      b.fuzz()->bound * a.series().abs_coeff_sum()});
  }
  if (a.fuzz() && b.fuzz()) {
    fuzzes.push_back({a.fuzz()->order + b.fuzz()->order,
                      a.fuzz()->bound * b.fuzz()->bound});
  }

  double log_out = 0.0;
  auto log_times_plain = [&](double lambda, const Hyper& other) {
    // lambda * ln(1/dx) * (other.series + other.fuzz). A power dx^p with
    // p > 0 dominates the log, so log-times-infinitesimal folds into fuzz at
    // half the power; a negative power times the log has no representation.
    if (!other.series().is_zero()) {
      if (other.series().leading_exponent().is_negative()) {
        throw Error(ErrorCode::precision_exhausted,
                    "logarithmic scale times infinitely large value");
      }
      log_out += lambda * other.series().coeff_at(Rational(0));
      double tail_sum = 0.0;
      std::optional<Rational> tail_lead;
      for (const Term& t : other.series().terms()) {
        if (t.exponent.is_positive()) {
          if (!tail_lead) tail_lead = t.exponent;
          tail_sum += std::abs(t.coeff);
        }
      }
      if (tail_lead) {
        fuzzes.push_back({tail_lead->divided_by(2), std::abs(lambda) * tail_sum});
      }
    }
    if (other.fuzz()) {
      if (!other.fuzz()->order.is_positive()) {
        throw Error(ErrorCode::precision_exhausted,
                    "logarithmic scale times bounded unknown of nonpositive order");
      }
      fuzzes.push_back({other.fuzz()->order.divided_by(2),
                        std::abs(lambda) * other.fuzz()->bound});
    }
  };
  if (a.log_coeff() != 0.0) log_times_plain(a.log_coeff(), b);
  if (b.log_coeff() != 0.0) log_times_plain(b.log_coeff(), a);

  return Hyper::from_parts(PuiseuxSeries::normalized(std::move(prod), w),
                           combine_fuzz(fuzzes), log_out);
}

Hyper inv(const Hyper& a) {
  const Rational& w = a.window();
  if (a.is_exact_zero()) {
    throw Error(ErrorCode::division_by_zero, "division by exact zero");
  }
  if (a.huge()) {
    // Reciprocal of a superpolynomially large value sits below every
    // retained power of dx.
    return Hyper::from_parts(PuiseuxSeries(w), Fuzz{w, 1.0});
  }
  PuiseuxSeries s = a.series();
  std::optional<Fuzz> f = a.fuzz();
  if (a.log_coeff() != 0.0) {
    if (!s.is_zero() && s.leading_exponent().is_negative()) {
      // The series dominates: eventually |l*ln(1/dx)| <= |l|*dx^(e/2) for
      // e < 0, so the log folds into a dominated fuzz term.
      std::vector<Fuzz> parts;
      parts.push_back({s.leading_exponent().divided_by(2), std::abs(a.log_coeff())});
      if (f) parts.push_back(*f);
      f = combine_fuzz(parts);
    } else {
      throw Error(ErrorCode::precision_exhausted,
                  "reciprocal of logarithmic-scale value");
    }
  }
  if (s.is_zero()) {
    throw Error(ErrorCode::indeterminate_divisor,
                "divisor is a bounded unknown that may vanish");
  }
  const Rational& e = s.leading_exponent();
  double c = s.leading_coeff();
  if (f && f->order == e && f->bound >= std::abs(c)) {
    throw Error(ErrorCode::indeterminate_divisor,
                "divisor's bounded unknown reaches its leading term");
  }
  PuiseuxSeries i = inv_series(s);
  if (!f) return Hyper::from_parts(i, std::nullopt);

  // Relative perturbation h = fuzz / series, then 1/(1+h) = 1 + g.
  Rational h_order = f->order - e;
  double h_bound = f->bound * i.abs_coeff_sum();
  Fuzz g{h_order, 0.0};
  if (h_order.is_zero()) {
    if (h_bound >= 1.0) {
      throw Error(ErrorCode::indeterminate_divisor,
                  "divisor's bounded unknown reaches its leading term");
    }
    g.bound = h_bound / (1.0 - h_bound);
  } else {
    g.bound = 2.0 * h_bound;
  }
  Fuzz out{i.leading_exponent() + g.order, g.bound * i.abs_coeff_sum()};
  return Hyper::from_parts(i, out);
}

Hyper div(const Hyper& a, const Hyper& b) { return mul(a, inv(b)); }

Hyper int_pow(const Hyper& a, long n) {
  if (n == 0) {
    if (a.is_exact_zero()) throw Error::illegal("0^0");
    return from_real(1.0, a.window());
  }
  if (n < 0) return inv(int_pow(a, -n));
  Hyper acc = from_real(1.0, a.window());
  Hyper base = a;
  unsigned long m = static_cast<unsigned long>(n);
  while (m != 0) {
    if (m & 1UL) acc = mul(acc, base);
    m >>= 1UL;
    if (m != 0) base = mul(base, base);
  }
  return acc;
}

Hyper nth_root(const Hyper& a, long n) {
  if (n < 1) throw Error(ErrorCode::invalid_input, "root degree must be at least 1");
  if (n == 1) return a;
  const Rational& w = a.window();
  if (a.is_exact_zero()) return a;
  if (a.huge()) {
    if (*a.huge() == Sign::positive) return huge_value(w, Sign::positive);
    if (n % 2 == 0) throw Error(ErrorCode::domain_error, "even root of a negative value");
    return huge_value(w, Sign::negative);
  }
  PuiseuxSeries s = a.series();
  std::optional<Fuzz> f = a.fuzz();
  if (a.log_coeff() != 0.0) {
    if (!s.is_zero() && s.leading_exponent().is_negative()) {
      std::vector<Fuzz> parts;
      parts.push_back({s.leading_exponent().divided_by(2), std::abs(a.log_coeff())});
      if (f) parts.push_back(*f);
      f = combine_fuzz(parts);
    } else {
      throw Error(ErrorCode::precision_exhausted, "root of logarithmic-scale value");
    }
  }
  if (s.is_zero()) {
    throw Error(ErrorCode::indeterminate_sign, "root of a bounded unknown");
  }
  const Rational e = s.leading_exponent();
  double c = s.leading_coeff();
  if (f && f->order == e && f->bound >= std::abs(c)) {
    throw Error(ErrorCode::indeterminate_sign,
                "root of a value with sign-dominating unknown");
  }
  if (n % 2 == 0 && c < 0.0) {
    throw Error(ErrorCode::domain_error, "even root of negative leading coefficient");
  }
  double root_c = c < 0.0 ? -std::pow(-c, 1.0 / static_cast<double>(n))
                          : std::pow(c, 1.0 / static_cast<double>(n));
  Rational e_root = e.divided_by(n);

  // (1+u)^(1/n) via the binomial series; coefficients by the usual
  // recurrence b_k = b_{k-1} * (alpha - k + 1) / k.
  std::vector<Term> u = relative_tail(s);
  double alpha = 1.0 / static_cast<double>(n);
  std::vector<double> binom = {1.0};
  auto binom_at = [&](long k) {
    while (static_cast<long>(binom.size()) <= k) {
      long j = static_cast<long>(binom.size());
      binom.push_back(binom.back() * (alpha - static_cast<double>(j - 1)) /
                      static_cast<double>(j));
    }
    return binom[static_cast<std::size_t>(k)];
  };
  std::vector<Term> acc = power_sum(u, w, binom_at);
  std::vector<Term> shifted;
  shifted.reserve(acc.size());
  for (const Term& t : acc) shifted.push_back({t.exponent + e_root, t.coeff * root_c});
  PuiseuxSeries root = PuiseuxSeries::normalized(std::move(shifted), w);

  if (!f) return Hyper::from_parts(root, std::nullopt);
  Rational h_order = f->order - e;
  double h_bound = f->bound * inv_series(s).abs_coeff_sum();
  Fuzz g{h_order, 0.0};
  if (h_order.is_zero()) {
    if (h_bound >= 0.5) {
      throw Error(ErrorCode::indeterminate_sign,
                  "root of a value with sign-dominating unknown");
    }
    g.bound = h_bound / (1.0 - h_bound);
  } else {
    g.bound = h_bound;
  }
  Fuzz out{root.leading_exponent() + g.order, g.bound * root.abs_coeff_sum()};
  return Hyper::from_parts(root, out);
}

Hyper abs(const Hyper& a) {
  return sign_of(a) < 0 ? neg(a) : a;
}

int sign_of(const Hyper& a) {
  if (a.huge()) return *a.huge() == Sign::positive ? 1 : -1;
  const PuiseuxSeries& s = a.series();
  if (!s.is_zero()) {
    const Rational& e = s.leading_exponent();
    double c = s.leading_coeff();
    if (e.is_negative()) {
      // Power scale beats the log marker; the fuzz can only tie at e.
      if (a.fuzz() && a.fuzz()->order == e && a.fuzz()->bound >= std::abs(c)) {
        throw Error(ErrorCode::indeterminate_sign,
                    "bounded unknown reaches the leading term");
      }
      return c > 0.0 ? 1 : -1;
    }
    if (a.log_coeff() != 0.0) {
      // ln(1/dx) dominates every dx^e with e >= 0, and by the normalization
      // invariant the fuzz order is >= e >= 0 too.
      return a.log_coeff() > 0.0 ? 1 : -1;
    }
    if (a.fuzz() && a.fuzz()->order == e && a.fuzz()->bound >= std::abs(c)) {
      throw Error(ErrorCode::indeterminate_sign,
                  "bounded unknown reaches the leading term");
    }
    return c > 0.0 ? 1 : -1;
  }
  if (a.log_coeff() != 0.0) {
    if (a.fuzz() && a.fuzz()->order.is_negative()) {
      throw Error(ErrorCode::indeterminate_sign,
                  "bounded unknown at negative order dominates the log term");
    }
    return a.log_coeff() > 0.0 ? 1 : -1;
  }
  if (a.fuzz()) {
    throw Error(ErrorCode::indeterminate_sign, "sign of a bounded unknown");
  }
  return 0;
}

std::strong_ordering compare(const Hyper& a, const Hyper& b) {
  if (a.huge() && b.huge() && *a.huge() == *b.huge()) {
    throw Error(ErrorCode::indeterminate_sign,
                "comparison of two superpolynomially large values");
  }
  int s = sign_of(sub(a, b));
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

NumClass classify(const Hyper& a) {
  NumClass out;
  if (a.huge()) {
    out.is_infinitely_large = true;
    return out;
  }
  const PuiseuxSeries& s = a.series();
  if (!s.is_zero()) {
    const Rational& e = s.leading_exponent();
    double c = s.leading_coeff();
    bool tied = a.fuzz() && a.fuzz()->order == e && a.fuzz()->bound >= std::abs(c);
    if (e.is_negative()) {
      if (tied) {
        throw Error(ErrorCode::indeterminate_class,
                    "bounded unknown reaches an infinitely large leading term");
      }
      out.is_infinitely_large = true;
      return out;
    }
    if (a.log_coeff() != 0.0) {
      out.is_infinitely_large = true;
      return out;
    }
    if (e.is_zero()) {
      out.is_finite = true;
      return out;
    }
    out.is_finite = true;
    out.is_infinitesimal = true;
    return out;
  }
  if (a.log_coeff() != 0.0) {
    if (a.fuzz() && a.fuzz()->order.is_negative()) {
      throw Error(ErrorCode::indeterminate_class,
                  "bounded unknown at negative order dominates the log term");
    }
    out.is_infinitely_large = true;
    return out;
  }
  if (a.fuzz()) {
    if (a.fuzz()->order.is_negative()) {
      throw Error(ErrorCode::indeterminate_class,
                  "bounded unknown at negative order");
    }
    out.is_finite = true;
    if (a.fuzz()->order.is_positive()) out.is_infinitesimal = true;
    return out;
  }
  out.is_finite = true;
  out.is_infinitesimal = true;
  return out;
}

std::string to_string(const Hyper& a) {
  using detail::format_double;
  if (a.huge()) {
    return *a.huge() == Sign::positive ? "+exp-large" : "-exp-large";
  }
  std::vector<std::string> parts;
  for (const Term& t : a.series().terms()) {
    if (t.exponent.is_zero()) {
      parts.push_back(format_double(t.coeff));
    } else if (t.exponent == Rational(1)) {
      parts.push_back(format_double(t.coeff) + "*dx");
    } else {
      parts.push_back(format_double(t.coeff) + "*dx^" + exponent_text(t.exponent));
    }
  }
  if (a.log_coeff() != 0.0) {
    parts.push_back(format_double(a.log_coeff()) + "*ln(1/dx)");
  }
  if (a.fuzz()) {
    parts.push_back("O~(dx^" + exponent_text(a.fuzz()->order) + ")*[-" +
                    format_double(a.fuzz()->bound) + "," +
                    format_double(a.fuzz()->bound) + "]");
  }
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

}  // namespace hyperlim
