#include "hyperlim/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperlim/corpus.hpp"
#include "hyperlim/detail/format.hpp"
#include "hyperlim/errors.hpp"
#include "hyperlim/expr.hpp"
#include "hyperlim/extended_real.hpp"
#include "hyperlim/limits.hpp"

namespace hyperlim::cli {

namespace {

using json = nlohmann::ordered_json;

int exit_code_for(const Error& e) {
  const bool usage = e.code() == ErrorCode::parse_error ||
                     e.code() == ErrorCode::invalid_input;
  return usage ? 2 : 1;
}

void print_error(std::ostream& err, const Error& e) {
  err << "error: " << e.what();
  if (e.span()) {
    const auto first = e.span()->begin + 1;
    if (e.span()->end > first) {
      err << " (columns " << first << "-" << e.span()->end << ")";
    } else {
      err << " (column " << first << ")";
    }
  }
  err << "\n";
}

std::optional<std::int64_t> parse_int(std::string_view text) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    const auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  const auto n = parse_int(std::string_view(text).substr(0, slash));
  const auto d = parse_int(std::string_view(text).substr(slash + 1));
  if (!n || !d || *d == 0) return std::nullopt;
  return Rational(*n, *d);
}

// Flag first, HYPERLIM_WINDOW second, built-in default last.
Rational resolve_window(const std::string& flag_text) {
  std::string text = flag_text;
  if (text.empty()) {
    if (const char* env = std::getenv("HYPERLIM_WINDOW")) text = env;
  }
  if (text.empty()) return PuiseuxSeries::default_window();
  const auto window = parse_rational(text);
  if (!window) {
    throw Error(ErrorCode::invalid_input,
                "unreadable window '" + text + "' (use an integer or p/q)");
  }
  if (*window < Rational(2)) {
    throw Error(ErrorCode::invalid_input, "the window must be at least 2");
  }
  return *window;
}

void check_tolerance(double tolerance) {
  if (!(tolerance > 0.0) || tolerance > 1e-3) {
    throw Error(ErrorCode::invalid_input, "the tolerance must lie in (0, 1e-3]");
  }
}

bool values_agree(const ExtendedReal& a, const ExtendedReal& b, double tolerance) {
  if (a.is_finite() != b.is_finite()) return false;
  if (!a.is_finite()) return a == b;
  return std::abs(a.value() - b.value()) <=
         tolerance * std::max({1.0, std::abs(a.value()), std::abs(b.value())});
}

std::string kind_name(ResultKind kind) {
  switch (kind) {
    case ResultKind::value: return "value";
    case ResultKind::does_not_exist: return "dne";
    case ResultKind::indeterminate: return "indeterminate";
  }
  return "?";
}

std::string interval_text(const std::pair<double, double>& interval) {
  return "interval: [" + detail::format_double(interval.first) + ", " +
         detail::format_double(interval.second) + "]";
}

json result_json(json query, const LimitResult& r,
                 const std::optional<std::string>& series) {
  json j;
  j["query"] = std::move(query);
  j["kind"] = kind_name(r.kind);
  j["value"] = r.is_value() ? json(r.value.str()) : json(nullptr);
  if (r.kind == ResultKind::does_not_exist) {
    j["left"] = r.left.str();
    j["right"] = r.right.str();
  } else {
    j["left"] = nullptr;
    j["right"] = nullptr;
  }
  if (series) j["series"] = *series;
  j["diagnostics"] = json::array();
  if (r.kind == ResultKind::indeterminate) {
    j["diagnostics"].push_back(r.reason);
    if (r.interval) j["diagnostics"].push_back(interval_text(*r.interval));
  }
  return j;
}

// Best-effort series text for --show-series; evaluation failures turn into a
// note instead of an error because the verdict itself already got through.
std::optional<std::string> series_or_note(const ExprPtr& e, const LimitTarget& target,
                                          const LimitOptions& options) {
  try {
    return to_string(evaluate_at_target(e, target, options));
  } catch (const Error& err) {
    return std::string("unavailable: ") + err.what();
  }
}

int emit_result(const LimitResult& r, json query, const std::optional<std::string>& series,
                const std::string& output, std::ostream& out) {
  if (output == "json") {
    out << result_json(std::move(query), r, series).dump(2) << "\n";
  } else {
    out << r.str() << "\n";
    if (series) out << "series: " << *series << "\n";
  }
  return 0;
}

int run_limit(const std::string& expr_text, const std::string& target_text,
              const LimitOptions& options, const std::string& output,
              bool show_series, std::ostream& out) {
  const ExprPtr e = parse_expression(expr_text);
  const auto target = LimitTarget::parse(target_text);
  if (!target) {
    throw Error(ErrorCode::invalid_input,
                "unreadable limit target '" + target_text + "'");
  }
  const LimitResult r = limit(e, *target, options);
  std::optional<std::string> series;
  if (show_series) series = series_or_note(e, *target, options);
  json query = {{"command", "limit"},
                {"expression", expr_text},
                {"target", target->str()},
                {"window", options.window.str()},
                {"tolerance", options.tolerance}};
  return emit_result(r, std::move(query), series, output, out);
}

struct StSide {
  std::optional<LimitResult> result;
  std::string error;

  std::string str() const {
    if (!result) return "undefined (" + error + ")";
    if (result->is_value()) return result->value.str();
    return result->str();
  }
};

StSide st_side(const ExprPtr& e, bool positive, const LimitOptions& options) {
  StSide side;
  try {
    side.result = one_sided_limit(
        e, positive ? LimitTarget::from_right_of(0.0) : LimitTarget::from_left_of(0.0),
        options);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::domain_error) throw;
    side.error = err.what();
  }
  return side;
}

int run_st(const std::string& expr_text, const LimitOptions& options,
           const std::string& output, bool show_series, std::ostream& out) {
  const ExprPtr e = parse_expression(expr_text, "dx");
  const StSide pos = st_side(e, true, options);
  const StSide neg = st_side(e, false, options);
  if (!pos.result && !neg.result) {
    throw Error(ErrorCode::domain_error, pos.error);
  }

  std::optional<std::string> series;
  if (show_series) series = series_or_note(e, LimitTarget::from_right_of(0.0), options);
  json query = {{"command", "st"},
                {"expression", expr_text},
                {"window", options.window.str()},
                {"tolerance", options.tolerance}};

  const bool both_values = pos.result && neg.result && pos.result->is_value() &&
                           neg.result->is_value();
  if (both_values &&
      values_agree(pos.result->value, neg.result->value, options.tolerance)) {
    return emit_result(*pos.result, std::move(query), series, output, out);
  }
  const bool both_indeterminate = pos.result && neg.result &&
                                  pos.result->kind == ResultKind::indeterminate &&
                                  neg.result->kind == ResultKind::indeterminate &&
                                  pos.result->reason == neg.result->reason;
  if (both_indeterminate) {
    return emit_result(*pos.result, std::move(query), series, output, out);
  }

  if (output == "json") {
    json j;
    j["query"] = std::move(query);
    j["kind"] = "dne";
    j["value"] = nullptr;
    j["left"] = neg.result && neg.result->is_value() ? json(neg.result->value.str())
                                                     : json(nullptr);
    j["right"] = pos.result && pos.result->is_value() ? json(pos.result->value.str())
                                                      : json(nullptr);
    if (series) j["series"] = *series;
    j["diagnostics"] = json::array({"dx > 0: " + pos.str(), "dx < 0: " + neg.str()});
    out << j.dump(2) << "\n";
  } else {
    out << pos.str() << " (dx > 0); " << neg.str() << " (dx < 0)\n";
    if (series) out << "series: " << *series << "\n";
  }
  return 0;
}

int run_derive(const std::string& expr_text, double x0, const LimitOptions& options,
               const std::string& output, bool show_series, std::ostream& out) {
  const ExprPtr e = parse_expression(expr_text);
  const LimitResult r = derivative_at(e, x0, options);
  std::optional<std::string> series;
  if (show_series) {
    try {
      const Rational w = options.window;
      const Hyper base = eval_hyper(e, from_real(x0, w));
      const Hyper step = mul(from_real(options.scale, w), dx(w));
      const Hyper fx = eval_hyper(e, add(from_real(x0, w), step));
      series = to_string(div(sub(fx, base), step));
    } catch (const Error& err) {
      series = std::string("unavailable: ") + err.what();
    }
  }
  json query = {{"command", "derive"},
                {"expression", expr_text},
                {"at", detail::format_double(x0)},
                {"window", options.window.str()},
                {"tolerance", options.tolerance}};
  return emit_result(r, std::move(query), series, output, out);
}

std::vector<PointSample> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::invalid_input, "cannot open points file '" + path + "'");
  }
  std::vector<PointSample> points;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    }
    std::istringstream row(line);
    PointSample p;
    if (!(row >> p.x)) continue;  // blank line
    std::string rest;
    if (!(row >> p.y) || (row >> rest)) {
      throw Error(ErrorCode::invalid_input,
                  "points file line " + std::to_string(number) +
                      ": expected `x y` per line");
    }
    points.push_back(p);
  }
  return points;
}

int run_counterexample(const std::string& points_path, double r,
                       const std::string& limit_text, const std::string& output,
                       std::ostream& out) {
  const auto L = ExtendedReal::parse(limit_text);
  if (!L) {
    throw Error(ErrorCode::invalid_input,
                "unreadable limit value '" + limit_text + "'");
  }
  const std::vector<PointSample> points = read_points(points_path);
  const ExprPtr f = counterexample_poly(points, r, *L);
  const std::string text = to_text(f);
  if (output == "json") {
    json j;
    j["query"] = {{"command", "counterexample"},
                  {"points", points_path},
                  {"at", detail::format_double(r)},
                  {"limit", L->str()}};
    j["kind"] = "counterexample";
    j["value"] = text;
    j["left"] = nullptr;
    j["right"] = nullptr;
    j["diagnostics"] = json::array();
    out << j.dump(2) << "\n";
  } else {
    out << text << "\n";
  }
  return 0;
}

int run_check(const std::string& path, const LimitOptions& options,
              const std::string& output, std::ostream& out) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::invalid_input, "cannot open corpus file '" + path + "'");
  }
  const std::vector<CorpusCase> cases = parse_corpus(in);
  std::vector<std::string> failures;
  std::ostringstream lines;
  for (const CorpusCase& c : cases) {
    const CaseResult result = run_case(c, options);
    if (result.passed) {
      lines << "ok   line " << c.line << ": " << c.raw << "\n";
    } else {
      std::ostringstream f;
      f << "FAIL line " << c.line << ": " << c.raw << " => got " << result.verdict;
      failures.push_back(f.str());
      lines << failures.back() << "\n";
    }
  }
  std::ostringstream summary;
  summary << cases.size() - failures.size() << " of " << cases.size()
          << " cases passed";
  if (output == "json") {
    json j;
    j["query"] = {{"command", "check"},
                  {"file", path},
                  {"window", options.window.str()},
                  {"tolerance", options.tolerance}};
    j["kind"] = "report";
    j["value"] = summary.str();
    j["left"] = nullptr;
    j["right"] = nullptr;
    j["diagnostics"] = json(failures);
    out << j.dump(2) << "\n";
  } else {
    out << lines.str() << summary.str() << "\n";
  }
  return failures.empty() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limits, derivatives and standard parts over a truncated "
               "hyperreal series model"};
  app.name("hyperlim");
  app.require_subcommand(1);

  std::string window_text;
  double tolerance = 1e-9;
  std::string output = "text";
  bool show_series = false;

  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", output, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--window", window_text,
                    "Truncation window as an integer or p/q (at least 2); "
                    "overrides HYPERLIM_WINDOW");
    sub->add_option("--tolerance", tolerance,
                    "Relative tolerance for value agreement, in (0, 1e-3]");
    add_output(sub);
  };

  std::string expr_text, target_text, points_path, limit_text, corpus_path;
  double at_value = 0.0;

  CLI::App* limit_cmd = app.add_subcommand("limit", "Evaluate a limit");
  limit_cmd->add_option("expression", expr_text, "Expression in x")->required();
  limit_cmd->add_option("--at", target_text,
                        "Target: x->r, x->r+, x->r-, x->+inf or x->-inf")
      ->required();
  add_common(limit_cmd);
  limit_cmd->add_flag("--show-series", show_series, "Print the evaluated series");

  CLI::App* st_cmd = app.add_subcommand("st", "Standard part of an expression in dx");
  st_cmd->add_option("expression", expr_text, "Expression in dx")->required();
  add_common(st_cmd);
  st_cmd->add_flag("--show-series", show_series, "Print the evaluated series");

  CLI::App* derive_cmd = app.add_subcommand("derive", "Differentiate at a point");
  derive_cmd->add_option("expression", expr_text, "Expression in x")->required();
  derive_cmd->add_option("--at", at_value, "Differentiation point")->required();
  add_common(derive_cmd);
  derive_cmd->add_flag("--show-series", show_series,
                       "Print the difference quotient series");

  CLI::App* counter_cmd = app.add_subcommand(
      "counterexample", "Function through given points with a prescribed limit");
  counter_cmd->add_option("--points", points_path, "File of `x y` samples")
      ->required();
  counter_cmd->add_option("--at", at_value, "Limit point")->required();
  counter_cmd->add_option("--limit", limit_text, "Prescribed limit (decimal or +-inf)")
      ->required();
  add_output(counter_cmd);

  CLI::App* check_cmd = app.add_subcommand("check", "Run a corpus file");
  check_cmd->add_option("file", corpus_path, "Corpus of `expr ; target ; expected`")
      ->required();
  add_common(check_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    app.exit(e, out, err);
    return 2;
  }

  try {
    LimitOptions options;
    options.window = resolve_window(window_text);
    check_tolerance(tolerance);
    options.tolerance = tolerance;

    if (*limit_cmd) {
      return run_limit(expr_text, target_text, options, output, show_series, out);
    }
    if (*st_cmd) {
      return run_st(expr_text, options, output, show_series, out);
    }
    if (*derive_cmd) {
      return run_derive(expr_text, at_value, options, output, show_series, out);
    }
    if (*counter_cmd) {
      return run_counterexample(points_path, at_value, limit_text, output, out);
    }
    return run_check(corpus_path, options, output, out);
  } catch (const Error& e) {
    print_error(err, e);
    return exit_code_for(e);
  }
}

}  // namespace hyperlim::cli
