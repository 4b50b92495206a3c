#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hyperlim/corpus.hpp"

using namespace hyperlim;

TEST_CASE("corpus lines parse with comments and trimming") {
  std::istringstream in(
      "# header\n"
      "\n"
      "sin(x)/x ; x->0 ; 1\n"
      "  1/x ; x->0+ ; inf  # pole\n"
      "x ; x->-inf ; -inf\n"
      "x^2 ; x->2 ; 4.0\n"
      "sin(1/x) ; x->0+ ; indeterminate\n"
      "abs(x)/x ; x->0 ; dne\n");
  const auto cases = parse_corpus(in);
  REQUIRE(cases.size() == 6);
  CHECK(cases[0].line == 3);
  CHECK(cases[0].expression == "sin(x)/x");
  CHECK(cases[0].target.approach == Approach::two_sided);
  CHECK(cases[0].expected == CorpusCase::Expected::finite);
  CHECK(cases[0].expected_value == 1.0);
  CHECK(cases[1].line == 4);
  CHECK(cases[1].expected == CorpusCase::Expected::plus_inf);
  CHECK(cases[1].target.approach == Approach::from_right);
  CHECK(cases[2].expected == CorpusCase::Expected::minus_inf);
  CHECK(cases[2].target.approach == Approach::to_minus_infinity);
  CHECK(cases[3].expected_value == 4.0);
  CHECK(cases[4].expected == CorpusCase::Expected::indeterminate);
  CHECK(cases[5].expected == CorpusCase::Expected::dne);
  CHECK(cases[5].raw == "abs(x)/x ; x->0 ; dne");
}

TEST_CASE("malformed corpus lines point at the line number") {
  const char* bad[] = {
      "sin(x)/x ; x->0\n",
      "sin(x)/x ; x->0 ; 1 ; extra\n",
      "; x->0 ; 1\n",
      "x ; nonsense ; 1\n",
      "x ; x->0 ; maybe\n",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    std::istringstream in(std::string("# first line\n") + text);
    try {
      parse_corpus(in);
      FAIL_CHECK("expected a parse error for: " << text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::parse_error);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("case results encode pass and failure") {
  std::istringstream in(
      "x+1 ; x->2 ; 3\n"
      "x+1 ; x->2 ; 4\n"
      "1/x ; x->0+ ; indeterminate\n");
  const auto cases = parse_corpus(in);
  const LimitOptions options;
  CHECK(run_case(cases[0], options).passed);
  const CaseResult wrong = run_case(cases[1], options);
  CHECK_FALSE(wrong.passed);
  CHECK(wrong.verdict == "3");
  const CaseResult mis = run_case(cases[2], options);
  CHECK_FALSE(mis.passed);
  CHECK(mis.verdict == "inf");
}

TEST_CASE("the shipped corpus passes end to end") {
  std::ifstream in(HYPERLIM_DATA_DIR "/corpus.txt");
  REQUIRE(in.good());
  const auto cases = parse_corpus(in);
  CHECK(cases.size() >= 60);
  const LimitOptions options;
  for (const CorpusCase& c : cases) {
    const CaseResult r = run_case(c, options);
    CAPTURE(c.raw);
    CHECK(r.passed);
  }
}
