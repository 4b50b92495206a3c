#pragma once

// Exact-arithmetic mirrors and generators used to check the double-based
// engine against independently computed values.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "hyperlim/rational.hpp"
#include "hyperlim/series.hpp"

namespace oracle {

using hyperlim::Hyper;
using hyperlim::PuiseuxSeries;
using hyperlim::Rational;
using hyperlim::Term;

// Puiseux polynomial with exact rational coefficients. No truncation, so it
// only mirrors products whose exponents stay inside the engine window.
using RatPoly = std::map<Rational, Rational>;

inline RatPoly rp_add(const RatPoly& a, const RatPoly& b) {
  RatPoly out = a;
  for (const auto& [e, c] : b) {
    const Rational sum = out.count(e) ? out[e] + c : c;
    if (sum == Rational(0)) out.erase(e); else out[e] = sum;
  }
  return out;
}

inline RatPoly rp_neg(const RatPoly& a) {
  RatPoly out;
  for (const auto& [e, c] : a) out[e] = -c;
  return out;
}

inline RatPoly rp_sub(const RatPoly& a, const RatPoly& b) { return rp_add(a, rp_neg(b)); }

inline RatPoly rp_mul(const RatPoly& a, const RatPoly& b) {
  RatPoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      const Rational e = ea + eb;
      const Rational sum = (out.count(e) ? out[e] : Rational(0)) + ca * cb;
      if (sum == Rational(0)) out.erase(e); else out[e] = sum;
    }
  }
  return out;
}

inline Hyper to_hyper(const RatPoly& p, const Rational& window) {
  std::vector<Term> terms;
  for (const auto& [e, c] : p) terms.push_back({e, c.to_double()});
  return Hyper::from_parts(PuiseuxSeries::normalized(std::move(terms), window),
                           std::nullopt);
}

// Every coefficient of `h` within the absolute window must match `p` and
// vice versa (exponents beyond the window are ignored on both sides).
inline bool matches(const Hyper& h, const RatPoly& p, double tol, const Rational& window) {
  if (h.fuzz() || h.huge() || h.log_coeff() != 0.0) return false;
  for (const auto& [e, c] : p) {
    if (e > window) continue;
    const double got = h.series().coeff_at(e);
    const double want = c.to_double();
    if (std::abs(got - want) > tol * std::max(1.0, std::abs(want))) return false;
  }
  for (const Term& t : h.series().terms()) {
    if (t.exponent > window) continue;
    const Rational key = t.exponent;
    const double want = p.count(key) ? p.at(key).to_double() : 0.0;
    if (std::abs(t.coeff - want) > tol * std::max(1.0, std::abs(want))) return false;
  }
  return true;
}

// Dyadic generator: coefficients n / 2^k with small n keep every mirrored
// product exactly representable in both models.
struct Gen {
  std::mt19937 rng;

  explicit Gen(std::uint32_t seed) : rng(seed) {}

  std::int64_t pick(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }

  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }

  Rational dyadic(bool nonzero = false) {
    std::int64_t num = pick(-16, 16);
    while (nonzero && num == 0) num = pick(-16, 16);
    const std::int64_t den = std::int64_t(1) << pick(0, 4);
    return Rational(num, den);
  }

  // Exponents in {0, 1/2, 1, 3/2, 2}: triple products stay inside window 8.
  Rational small_exponent(bool allow_zero = true) {
    return Rational(pick(allow_zero ? 0 : 1, 4), 2);
  }

  RatPoly poly(int max_terms, bool force_constant = false) {
    RatPoly p;
    const std::int64_t terms = pick(1, max_terms);
    for (std::int64_t i = 0; i < terms; ++i) {
      const Rational c = dyadic(true);
      p[small_exponent(!force_constant || i > 0)] = c;
    }
    if (force_constant) p[Rational(0)] = dyadic(true);
    return p;
  }
};

}  // namespace oracle
