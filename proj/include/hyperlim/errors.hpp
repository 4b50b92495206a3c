#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace hyperlim {

// Half-open byte range into the original input text. Attached to parse and
// evaluation errors so the CLI can point at the offending subexpression.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class ErrorCode {
  invalid_scalar,
  precision_exhausted,
  division_by_zero,
  indeterminate_divisor,
  indeterminate_sign,
  indeterminate_class,
  domain_error,
  not_finite,
  undetermined_standard_part,
  illegal_form,
  parse_error,
  invalid_input,
  numerical_failure,
};

inline const char* name_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_scalar: return "invalid scalar";
    case ErrorCode::precision_exhausted: return "precision exhausted";
    case ErrorCode::division_by_zero: return "division by zero";
    case ErrorCode::indeterminate_divisor: return "indeterminate divisor";
    case ErrorCode::indeterminate_sign: return "indeterminate sign";
    case ErrorCode::indeterminate_class: return "indeterminate class";
    case ErrorCode::domain_error: return "domain error";
    case ErrorCode::not_finite: return "not finite";
    case ErrorCode::undetermined_standard_part: return "undetermined standard part";
    case ErrorCode::illegal_form: return "illegal form";
    case ErrorCode::parse_error: return "parse error";
    case ErrorCode::invalid_input: return "invalid input";
    case ErrorCode::numerical_failure: return "numerical failure";
  }
  return "unknown";
}

// The engine's single exception type. Payloads beyond the code are optional:
// `interval` is set for undetermined standard parts (the enclosing real
// interval, when one exists), `form` names the offending extended-real form,
// and `span` is filled in once an evaluator has located the failure in the
// source expression.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::pair<double, double>>& interval() const noexcept {
    return interval_;
  }
  const std::string& form() const noexcept { return form_; }
  const std::optional<SourceSpan>& span() const noexcept { return span_; }

  Error with_span(SourceSpan s) const {
    Error copy = *this;
    copy.span_ = s;
    return copy;
  }

  static Error illegal(const std::string& form_name) {
    Error e(ErrorCode::illegal_form, "illegal form " + form_name);
    e.form_ = form_name;
    return e;
  }

  static Error undetermined(const std::string& message,
                            std::optional<std::pair<double, double>> interval) {
    Error e(ErrorCode::undetermined_standard_part, message);
    e.interval_ = interval;
    return e;
  }

 private:
  ErrorCode code_;
  std::optional<std::pair<double, double>> interval_;
  std::string form_;
  std::optional<SourceSpan> span_;
};

}  // namespace hyperlim
