#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hyperlim/limits.hpp"

namespace hyperlim {

// One corpus line: `<expression> ; <target> ; <expected>` where target is
// "x->r" / "x->r+" / "x->r-" / "x->+inf" / "x->-inf" and expected is a
// decimal, "inf", "-inf", "dne" or "indeterminate". `#` starts a comment.
struct CorpusCase {
  enum class Expected { finite, plus_inf, minus_inf, dne, indeterminate };

  int line = 0;
  std::string raw;
  std::string expression;
  LimitTarget target;
  Expected expected = Expected::finite;
  double expected_value = 0.0;
};

// ParseError (with the line number in the message) on malformed lines.
std::vector<CorpusCase> parse_corpus(std::istream& in);

struct CaseResult {
  bool passed = false;
  std::string verdict;
};

// Evaluates the case; a non-retryable evaluation error becomes a failed
// result with the error text as the verdict.
CaseResult run_case(const CorpusCase& c, const LimitOptions& options);

}  // namespace hyperlim
