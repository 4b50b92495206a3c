#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hyperlim/series.hpp"

namespace hyperlim {

// Unary elementary functions available in expressions. Powers are handled at
// the expression layer (integer exponents by repeated squaring, the rest
// through exp and ln), n-th roots by nth_root.
enum class Elementary { sin_fn, cos_fn, tan_fn, exp_fn, ln_fn, sqrt_fn, abs_fn };

const char* name_of(Elementary f);
std::optional<Elementary> elementary_by_name(std::string_view name);

// Lift of f to the series model. Finite arguments go through the Taylor
// expansion of f about the standard part; a bounded unknown in the argument
// is propagated through a slope bound (sin, cos, ln) or an exact envelope
// (exp). Infinitely large arguments:
//   sin, cos -> bounded unknown of order 0 (the value stays in [-1, 1]);
//   tan      -> follows from sin/cos (an IndeterminateDivisor);
//   exp      -> exponentially large marker when positive, an unknown below
//               the window when negative;
//   ln       -> k*ln(1/dx) + series when the argument is series-led, not
//               representable (PrecisionExhausted) when log-led.
// DomainError for ln / sqrt / even roots outside their domain.
Hyper apply(Elementary f, const Hyper& a);

// Plain evaluation over double with the same domain checks. Overflow is
// reported as +/-inf, not an error; NaN never escapes.
double apply_real(Elementary f, double x);

// Taylor coefficients f^(k)(center)/k! for k = 0..count-1 via closed-form
// recurrences, never numeric differentiation. DomainError when f is not
// analytic at the center (ln and sqrt need center > 0, abs needs a nonzero
// center, tan a nonzero cosine).
std::vector<double> taylor_coefficients(Elementary f, double center, int count);

// The same for x -> x^exponent about center > 0.
std::vector<double> pow_taylor_coefficients(double exponent, double center, int count);

}  // namespace hyperlim
