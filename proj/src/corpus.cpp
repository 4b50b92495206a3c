#include "hyperlim/corpus.hpp"

#include <cmath>
#include <istream>
#include <sstream>

#include "hyperlim/errors.hpp"
#include "hyperlim/expr.hpp"
#include "hyperlim/extended_real.hpp"

namespace hyperlim {

namespace {

std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

Error corpus_error(int line, const std::string& what) {
  std::ostringstream msg;
  msg << "corpus line " << line << ": " << what;
  return Error(ErrorCode::parse_error, msg.str());
}

void parse_expected(const std::string& text, int line, CorpusCase& out) {
  if (text == "inf" || text == "+inf") {
    out.expected = CorpusCase::Expected::plus_inf;
    return;
  }
  if (text == "-inf") {
    out.expected = CorpusCase::Expected::minus_inf;
    return;
  }
  if (text == "dne") {
    out.expected = CorpusCase::Expected::dne;
    return;
  }
  if (text == "indeterminate") {
    out.expected = CorpusCase::Expected::indeterminate;
    return;
  }
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size() && std::isfinite(value)) {
      out.expected = CorpusCase::Expected::finite;
      out.expected_value = value;
      return;
    }
  } catch (const std::exception&) {
  }
  throw corpus_error(line, "unreadable expected value '" + text + "'");
}

}  // namespace

std::vector<CorpusCase> parse_corpus(std::istream& in) {
  std::vector<CorpusCase> cases;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string text = trim(line);
    if (text.empty()) continue;

    const auto first = text.find(';');
    const auto second = first == std::string::npos ? std::string::npos : text.find(';', first + 1);
    if (second == std::string::npos || text.find(';', second + 1) != std::string::npos) {
      throw corpus_error(number, "expected `expression ; target ; value`");
    }

    CorpusCase c;
    c.line = number;
    c.raw = text;
    c.expression = trim(text.substr(0, first));
    if (c.expression.empty()) throw corpus_error(number, "empty expression");

    const std::string target_text = trim(text.substr(first + 1, second - first - 1));
    const auto target = LimitTarget::parse(target_text);
    if (!target) throw corpus_error(number, "unreadable target '" + target_text + "'");
    c.target = *target;

    parse_expected(trim(text.substr(second + 1)), number, c);
    cases.push_back(std::move(c));
  }
  return cases;
}

CaseResult run_case(const CorpusCase& c, const LimitOptions& options) {
  CaseResult out;
  LimitResult result = LimitResult::indeterminate("not evaluated");
  try {
    const ExprPtr expr = parse_expression(c.expression);
    result = limit(expr, c.target, options);
  } catch (const Error& e) {
    out.verdict = std::string("error: ") + e.what();
    return out;
  }
  out.verdict = result.str();

  switch (c.expected) {
    case CorpusCase::Expected::finite: {
      if (!result.is_value() || !result.value.is_finite()) break;
      const double got = result.value.value();
      const double allowed =
          options.tolerance * std::max(1.0, std::abs(c.expected_value));
      out.passed = std::abs(got - c.expected_value) <= allowed;
      break;
    }
    case CorpusCase::Expected::plus_inf:
      out.passed = result.is_value() && result.value.is_plus_infinity();
      break;
    case CorpusCase::Expected::minus_inf:
      out.passed = result.is_value() && result.value.is_minus_infinity();
      break;
    case CorpusCase::Expected::dne:
      out.passed = result.kind == ResultKind::does_not_exist;
      break;
    case CorpusCase::Expected::indeterminate:
      out.passed = result.kind == ResultKind::indeterminate;
      break;
  }
  return out;
}

}  // namespace hyperlim
